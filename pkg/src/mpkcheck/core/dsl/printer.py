"""Canonical text form of tensor elements; the parser reads it back."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from mpkcheck.core.algebra.toeplitz import CIRCLE, SHIFT, Sym


def format_symbol(slot: int, sym: Sym) -> List[str]:
    """Factors for one slot; empty for identity symbols."""
    if sym.kind == SHIFT:
        if sym.a > 0:
            return [f"t@{slot}"] * sym.a
        return [f"t@{slot}*"] * (-sym.a)
    if sym.kind == CIRCLE:
        return [f"u^{sym.a}@{slot}"] if sym.a else []
    return [f"e({sym.a},{sym.b})@{slot}"]


def format_key(key: Tuple[Sym, ...]) -> str:
    factors: List[str] = []
    for slot, sym in enumerate(key):
        factors.extend(format_symbol(slot, sym))
    return " * ".join(factors) if factors else "1"


def _format_term(coeff: Fraction, key: Tuple[Sym, ...]) -> str:
    body = format_key(key)
    magnitude = abs(coeff)
    if magnitude == 1:
        return body
    if body == "1":
        return str(magnitude)
    return f"{magnitude} * {body}"


def format_element(x) -> str:
    """``t@0 * t@0* - e(0,0)@1``-style text for a TensorElement; ``0`` when empty."""
    pieces: List[str] = []
    for key, coeff in x.items():
        term = _format_term(coeff, key)
        if not pieces:
            pieces.append(f"-{term}" if coeff < 0 else term)
        else:
            pieces.append(f"{'-' if coeff < 0 else '+'} {term}")
    return " ".join(pieces) if pieces else "0"
