"""
Truncated sparse-matrix shadows of symbolic elements.

Every Toeplitz slot is compressed to ℂ^N (the shift becomes the N×N
subdiagonal, e_ij a single entry), circle slots are evaluated at sample
points z with |z| = 1, and tuples become Kronecker products. Truncation
only corrupts relations near the index N-1, so symbolic and numeric results
are compared on an interior window: multi-indices whose coordinates are all
below N - D - margin, where D is the summed reach of the factors involved.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from mpkcheck.core.algebra.matrix import AlgMatrix
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import SlotProduct, TensorElement, tmul
from mpkcheck.core.algebra.toeplitz import SHIFT, UNIT, Sym
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import VerificationReport
from mpkcheck.utils.error import InvalidTruncation, SphereBlockNotLifted

logger = logging.getLogger(__name__)

UNIT_MODULUS_TOLERANCE = 1e-14

Numeric = Union[TensorElement, AlgMatrix]


@dataclass(frozen=True)
class TruncationSpec:
    """Truncation size, circle sample points and interior margin."""

    N: int = 16
    circle_points: Tuple[complex, ...] = (1 + 0j,)
    margin: int = 0

    def __post_init__(self) -> None:
        if self.margin < 0:
            raise InvalidTruncation(f"margin must be non-negative, got {self.margin}")
        if self.N < 2 * self.margin + 2:
            raise InvalidTruncation(
                f"truncation N={self.N} is too small for margin {self.margin} (need N >= 2*margin + 2)",
                details={"N": self.N, "margin": self.margin},
            )
        if not self.circle_points:
            raise InvalidTruncation("at least one circle sample point is required")
        for z in self.circle_points:
            if abs(abs(z) - 1.0) > UNIT_MODULUS_TOLERANCE:
                raise InvalidTruncation(f"circle sample {z} is not of modulus 1", details={"point": str(z)})

    @classmethod
    def seeded(cls, N: int, points: int = 4, margin: int = 0, seed: int = 42) -> "TruncationSpec":
        angles = np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi, size=points)
        return cls(N=N, circle_points=tuple(complex(np.exp(1j * a)) for a in angles), margin=margin)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "margin": self.margin,
            "circle_points": [[z.real, z.imag] for z in self.circle_points],
        }


@dataclass
class SparseRep:
    """Sparse matrix of one element at one circle sample."""

    matrix: sp.csr_matrix
    sample: Tuple[complex, ...] = ()
    toeplitz_slots: int = 0
    N: int = 0

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def entries(self) -> List[Tuple[int, int, complex]]:
        coo = self.matrix.tocoo()
        items = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        return [(r, c, complex(v)) for r, c, v in items if v != 0]

    def window(self, indices: np.ndarray) -> np.ndarray:
        return self.matrix[indices][:, indices].toarray()

    def is_hermitian(self, indices: np.ndarray, tol: float = 1e-12) -> bool:
        block = self.window(indices)
        return bool(np.max(np.abs(block - block.conj().T), initial=0.0) <= tol)


# ───────── building blocks ─────────
@lru_cache(maxsize=None)
def _slot_matrix(sym: Sym, N: int) -> sp.csr_matrix:
    if sym.kind == SHIFT:
        return sp.eye(N, N, k=-sym.a, dtype=complex, format="csr")
    if sym.kind == UNIT:
        m = sp.lil_matrix((N, N), dtype=complex)
        if sym.a < N and sym.b < N:
            m[sym.a, sym.b] = 1.0
        return m.tocsr()
    raise ValueError(f"{sym!r} is not a Toeplitz symbol")


def circle_samples(sig: Signature, spec: TruncationSpec) -> List[Tuple[complex, ...]]:
    """One sample per circle point; circle slot q uses point s + q (cyclically)."""
    count = len(sig.circle_slots)
    points = spec.circle_points
    if not count:
        return [()]
    return [tuple(points[(s + q) % len(points)] for q in range(count)) for s in range(len(points))]


def _require_lifted(sig: Signature) -> None:
    if sig.sphere_ranges:
        raise SphereBlockNotLifted(
            f"{sig} has sphere blocks; lift to representatives before building matrices",
            details={"signature": sig.label},
        )


def to_matrix(x: TensorElement, spec: TruncationSpec, sample: Optional[Tuple[complex, ...]] = None) -> SparseRep:
    """
    Matrix of ``x`` on (ℂ^N)^{⊗ Toeplitz slots} at one circle sample.

    Raises:
        SphereBlockNotLifted: ``x`` lives in a signature with sphere blocks
    """
    sig = x.signature
    _require_lifted(sig)
    if sample is None:
        sample = circle_samples(sig, spec)[0]
    toeplitz = [k for k in range(sig.slot_count) if not sig.is_circle(k)]
    circles = list(sig.circle_slots)
    dim = spec.N ** len(toeplitz)
    total = sp.csr_matrix((dim, dim), dtype=complex)
    for key, c in x.items():
        scalar = complex(float(c))
        for q, slot in enumerate(circles):
            scalar *= sample[q] ** key[slot].a
        factors = [_slot_matrix(key[k], spec.N) for k in toeplitz]
        term = reduce(lambda a, b: sp.kron(a, b, format="csr"), factors) if factors else sp.identity(1, complex, "csr")
        total = total + scalar * term
    return SparseRep(total.tocsr(), tuple(sample), len(toeplitz), spec.N)


def to_block_matrix(m: AlgMatrix, spec: TruncationSpec, sample: Optional[Tuple[complex, ...]] = None) -> SparseRep:
    """Block sparse matrix of a matrix over a lifted signature."""
    _require_lifted(m.signature)
    blocks = [[to_matrix(x, spec, sample).matrix for x in row] for row in m.entries]
    first = to_matrix(m.entries[0][0], spec, sample)
    return SparseRep(sp.bmat(blocks, format="csr"), first.sample, first.toeplitz_slots, spec.N)


# ───────── interior windows ─────────
def reach(x: Numeric) -> int:
    """How far a factor can move or read an index: max |shift| or matrix-unit index + 1."""
    if isinstance(x, AlgMatrix):
        return max(reach(e) for row in x.entries for e in row)
    out = 0
    for key, _ in x.items():
        for sym in key:
            if sym.kind == SHIFT:
                out = max(out, abs(sym.a))
            elif sym.kind == UNIT:
                out = max(out, sym.a + 1, sym.b + 1)
    return out


def window_indices(slots: int, N: int, bound: int) -> np.ndarray:
    """Flat (Kronecker order) indices whose coordinates are all < bound."""
    if bound <= 0:
        return np.zeros(0, dtype=np.int64)
    if slots == 0:
        return np.zeros(1, dtype=np.int64)
    grid = np.indices((bound,) * slots).reshape(slots, -1)
    return np.ravel_multi_index(tuple(grid), (N,) * slots).astype(np.int64)


def _block_window(indices: np.ndarray, block_dim: int, blocks: int) -> np.ndarray:
    return np.concatenate([indices + b * block_dim for b in range(blocks)]) if blocks > 1 else indices


def _numeric(x: Union[Numeric, Sequence[Numeric]], spec: TruncationSpec, sample) -> sp.csr_matrix:
    if isinstance(x, (list, tuple)):
        mats = [_numeric(f, spec, sample) for f in x]
        return reduce(lambda a, b: (a @ b).tocsr(), mats)
    if isinstance(x, AlgMatrix):
        return to_block_matrix(x, spec, sample).matrix
    return to_matrix(x, spec, sample).matrix


def _signature_of(x: Union[Numeric, Sequence[Numeric]]) -> Signature:
    if isinstance(x, (list, tuple)):
        return _signature_of(x[0])
    return x.signature


def _blocks_of(x: Union[Numeric, Sequence[Numeric]]) -> int:
    if isinstance(x, (list, tuple)):
        return _blocks_of(x[0])
    return x.rows if isinstance(x, AlgMatrix) else 1


def _total_reach(x: Union[Numeric, Sequence[Numeric]]) -> int:
    if isinstance(x, (list, tuple)):
        return sum(reach(f) for f in x)
    return reach(x)


def _compare(report: ReportBuilder, label: str, lhs, rhs, spec: TruncationSpec, tol: float, D: int) -> None:
    sig = _signature_of(lhs)
    _require_lifted(sig)
    slots = sum(1 for k in range(sig.slot_count) if not sig.is_circle(k))
    bound = spec.N - D - spec.margin
    blocks = _blocks_of(lhs)
    indices = _block_window(window_indices(slots, spec.N, bound), spec.N ** slots, blocks)
    report.meta(N=spec.N, D=D, margin=spec.margin, window_bound=bound, window_size=int(indices.size),
                window_rule="coordinates < N - D - margin, D = summed reach of the factors")
    if indices.size == 0:
        report.skip(f"empty interior window (N={spec.N}, D={D}, margin={spec.margin})")
        return
    worst = 0.0
    for sample in circle_samples(sig, spec):
        left = _numeric(lhs, spec, sample)[indices][:, indices]
        right = _numeric(rhs, spec, sample)[indices][:, indices]
        delta = left - right
        diff = float(abs(delta).max()) if delta.nnz else 0.0
        worst = max(worst, diff)
        if diff > tol:
            logger.debug(f"{report.check}: window difference {diff:.3e} at sample {sample}")
        report.expect(label, diff <= tol, sample=[[z.real, z.imag] for z in sample], max_difference=diff)
    report.meta(max_difference=worst)


def cross_validate_mul(
    a: TensorElement,
    b: TensorElement,
    spec: TruncationSpec,
    tol: float = 1e-10,
    product: Optional[SlotProduct] = None,
    check: str = "numeric_mul",
    **params,
) -> VerificationReport:
    """to_matrix(a·b) against to_matrix(a)·to_matrix(b) on the interior window."""
    report = ReportBuilder(check, **params)
    symbolic = tmul(a, b, product)
    _compare(report, "symbolic product matches matrix product", symbolic, [a, b], spec, tol, reach(a) + reach(b))
    return report.build()


def cross_validate_identity(
    lhs: Union[Numeric, Sequence[Numeric]],
    rhs: Union[Numeric, Sequence[Numeric]],
    spec: TruncationSpec,
    tol: float = 1e-10,
    check: str = "numeric_identity",
    **params,
) -> VerificationReport:
    """
    Entrywise window agreement of two sides; a side given as a sequence is the
    matrix product of its factors.
    """
    report = ReportBuilder(check, **params)
    D = max(_total_reach(lhs), _total_reach(rhs))
    _compare(report, "both sides agree", lhs, rhs, spec, tol, D)
    return report.build()


def dump_coo(rep: SparseRep) -> str:
    """One ``row col re im`` line per stored entry."""
    return "\n".join(f"{r} {c} {v.real!r} {v.imag!r}" for r, c, v in rep.entries())
