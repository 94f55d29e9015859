"""
Multipullback compatibility of tuples (a_0, …, a_n).

a_i lives in T^{⊗i} ⊗ C(S¹) ⊗ T^{⊗(n-i)} (optionally followed by further
blocks). For i ≠ j the map π^i_j applies the symbol map at slot j of a_i;
the tuple is compatible when π^i_j(a_i) = π^j_i(a_j) for every pair.
"""

from __future__ import annotations

import itertools
from typing import Callable, List, Optional, Sequence

from mpkcheck.core.algebra.signature import BlockKind, Signature
from mpkcheck.core.algebra.tensor import TensorElement, apply_symbol_at, generator
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import VerificationReport
from mpkcheck.utils.error import IncompatibleSlot, SignatureMismatch

Projection = Callable[[int, int, TensorElement], TensorElement]


def component_signature(n: int, i: int, extra: Signature = Signature()) -> Signature:
    """T^{⊗i} ⊗ C(S¹) ⊗ T^{⊗(n-i)} ⊗ extra."""
    return Signature.toeplitz(i) + Signature.circle() + Signature.toeplitz(n - i) + extra


def default_projection(i: int, j: int, x: TensorElement) -> TensorElement:
    return apply_symbol_at(x, j)


def _sphere_head(sig: Signature) -> int:
    if not sig.blocks or sig.blocks[0].kind != BlockKind.SPHERE:
        raise IncompatibleSlot(
            f"{sig} does not start with a sphere block",
            details={"signature": sig.label},
        )
    return sig.blocks[0].width


def multipullback_tuple(x: TensorElement) -> List[TensorElement]:
    """
    The tuple of images of a sphere element: a_i is a representative of x
    with the symbol map applied at slot i.

    Representatives differing by all-unit tuples of the sphere block give the
    same a_i, so the tuple is well defined.
    """
    width = _sphere_head(x.signature)
    lifted = x.lift()
    return [apply_symbol_at(lifted, i) for i in range(width)]


def multipullback_check(
    elements: Sequence[TensorElement],
    projection: Optional[Projection] = None,
    check: str = "multipullback",
    **params,
) -> VerificationReport:
    """
    Compatibility of a tuple: π^i_j(a_i) = π^j_i(a_j) for all i < j.

    Raises:
        SignatureMismatch: a_i is not in T^{⊗i} ⊗ C(S¹) ⊗ T^{⊗(n-i)} (⊗ a common tail)
    """
    projection = projection or default_projection
    n = len(elements) - 1
    report = ReportBuilder(check, n=n, **params)
    if n < 0:
        report.skip("empty tuple")
        return report.build()
    width = n + 1
    tail = Signature(elements[0].signature.blocks[width:])
    for i, a in enumerate(elements):
        expected = component_signature(n, i, tail)
        if a.signature != expected:
            raise SignatureMismatch(
                f"component {i} lives in {a.signature}, expected {expected}",
                details={"component": i, "got": a.signature.label, "expected": expected.label},
            )
    report.meta(components=[a.signature.label for a in elements])
    for i, j in itertools.combinations(range(width), 2):
        lhs = projection(i, j, elements[i])
        rhs = projection(j, i, elements[j])
        report.expect(f"π^{i}_{j}(a_{i}) = π^{j}_{i}(a_{j})", lhs == rhs, i=i, j=j, lhs=lhs, rhs=rhs)
    return report.build()


def perturb(elements: Sequence[TensorElement], index: int) -> List[TensorElement]:
    """Add the circle generator of component ``index`` to that component."""
    out = list(elements)
    a = out[index]
    out[index] = a + generator(a.signature, index)
    return out
