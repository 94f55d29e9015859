import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from mpkcheck.core.algebra.signature import Signature  # noqa: E402
from mpkcheck.core.algebra.tensor import TensorElement  # noqa: E402
from mpkcheck.core.algebra.toeplitz import Circle, Shift, ToeplitzElement, Unit  # noqa: E402
from mpkcheck.schemas.models import SuiteConfig  # noqa: E402


# ───────── hypothesis strategies ─────────
coefficients = st.integers(min_value=-3, max_value=3).filter(bool)

toeplitz_symbols = st.one_of(
    st.builds(Shift, st.integers(min_value=-3, max_value=3)),
    st.builds(Unit, st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)),
)

toeplitz_elements = st.dictionaries(toeplitz_symbols, coefficients, max_size=4).map(ToeplitzElement)


def slot_symbols(sig: Signature, slot: int):
    if sig.is_circle(slot):
        return st.builds(Circle, st.integers(min_value=-2, max_value=2))
    return toeplitz_symbols


def tensor_elements(sig: Signature, max_terms: int = 3):
    keys = st.tuples(*[slot_symbols(sig, k) for k in range(sig.slot_count)])
    return st.dictionaries(keys, coefficients, max_size=max_terms).map(lambda terms: TensorElement(sig, terms))


# ───────── fixtures ─────────
@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def sphere2():
    """C(S^3_H): one sphere block of width 2."""
    return Signature.sphere(2)


@pytest.fixture
def small_config():
    """A suite configuration small enough for unit tests."""
    return SuiteConfig(n_max=1, k_max=1, ledger_n_max=2, comb_n_max=4, binom_m_max=4,
                       numeric_pairs=3, injectivity_samples=5, circle_points=2)


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch, tmp_path):
    """No MPK_* variables or suite files leak into tests."""
    import os

    for key in list(os.environ):
        if key.startswith("MPK_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
