"""
Polynomial *-subalgebra of the Toeplitz algebra.

Every polynomial in the unilateral shift ``t`` and its adjoint has a unique
expansion in the basis

    Shift(m)   = t^m           (m > 0),  (t*)^|m|  (m < 0),  1  (m = 0)
    Unit(i, j) = e_ij = t^i (1 - t t*) (t*)^j            (0-based)

Products are reduced eagerly with the telescoping rule

    t^a (t*)^b = Shift(a - b) - Σ_{r=1}^{min(a,b)} Unit(a - r, b - r)

so equality of elements is equality of coefficient maps. Circle symbols
``Circle(m) = u^m`` share the same symbol type; they are used by circle slots
of tensor signatures and by ``LaurentPoly``.

The grading dual to the gauge action gives ``t`` degree 1:
deg Shift(m) = m, deg Unit(i, j) = i - j, deg Circle(m) = m.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, NamedTuple, Optional, Tuple

from mpkcheck.core.algebra.linear import LinearCombination, Scalar, accumulate, as_fraction
from mpkcheck.utils.error import IncompatibleSlot

SHIFT, UNIT, CIRCLE = 0, 1, 2


class Sym(NamedTuple):
    """Basis symbol; ordering is lexicographic on (kind, a, b)."""

    kind: int
    a: int
    b: int = 0

    def __repr__(self) -> str:
        if self.kind == SHIFT:
            return f"Shift({self.a})"
        if self.kind == UNIT:
            return f"Unit({self.a},{self.b})"
        return f"Circle({self.a})"


def Shift(m: int) -> Sym:
    return Sym(SHIFT, m, 0)


def Unit(i: int, j: int) -> Sym:
    if i < 0 or j < 0:
        raise ValueError(f"matrix unit indices must be non-negative, got ({i},{j})")
    return Sym(UNIT, i, j)


def Circle(m: int) -> Sym:
    return Sym(CIRCLE, m, 0)


ONE = Shift(0)
CIRCLE_ONE = Circle(0)

SymProduct = Tuple[Tuple[Sym, int], ...]


def degree(sym: Sym) -> int:
    return sym.a - sym.b if sym.kind == UNIT else sym.a


def adjoint_symbol(sym: Sym) -> Sym:
    if sym.kind == UNIT:
        return Sym(UNIT, sym.b, sym.a)
    return Sym(sym.kind, -sym.a, 0)


def symbol_of(sym: Sym) -> Optional[Sym]:
    """Image under the symbol map: Shift(m) -> u^m, matrix units -> 0."""
    if sym.kind == SHIFT:
        return Circle(sym.a)
    if sym.kind == CIRCLE:
        return sym
    return None


@lru_cache(maxsize=None)
def mul_symbols(x: Sym, y: Sym) -> SymProduct:
    """Product of two basis symbols as an integer combination of symbols."""
    if x.kind == CIRCLE or y.kind == CIRCLE:
        if x.kind != y.kind:
            raise IncompatibleSlot(f"cannot multiply {x!r} by {y!r}")
        return ((Circle(x.a + y.a), 1),)

    if x.kind == SHIFT and y.kind == SHIFT:
        a, b = x.a, y.a
        if a <= 0 or b >= 0:
            return ((Shift(a + b), 1),)
        c = -b
        out = [(Shift(a - c), 1)]
        out.extend((Sym(UNIT, a - r, c - r), -1) for r in range(1, min(a, c) + 1))
        return tuple(out)

    if x.kind == SHIFT:
        i = y.a + x.a
        return ((Sym(UNIT, i, y.b), 1),) if i >= 0 else ()

    if y.kind == SHIFT:
        j = x.b - y.a
        return ((Sym(UNIT, x.a, j), 1),) if j >= 0 else ()

    return ((Sym(UNIT, x.a, y.b), 1),) if x.b == y.a else ()


def mul_symbols_dropping_telescope(x: Sym, y: Sym) -> SymProduct:
    """``mul_symbols`` without the finite-rank correction of t^a (t*)^b; wrong on purpose."""
    if x.kind == SHIFT and y.kind == SHIFT and x.a > 0 and y.a < 0:
        return ((Shift(x.a + y.a), 1),)
    return mul_symbols(x, y)


def _check_toeplitz(sym: Sym) -> Sym:
    if sym.kind == CIRCLE:
        raise IncompatibleSlot(f"{sym!r} is not a Toeplitz symbol")
    return sym


class ToeplitzElement(LinearCombination[Sym]):
    """Exact element of the polynomial Toeplitz algebra."""

    __slots__ = ()

    def __init__(self, terms=None):
        super().__init__(terms)
        for sym in self._terms:
            _check_toeplitz(sym)

    @classmethod
    def one(cls) -> "ToeplitzElement":
        return cls._trusted({ONE: Fraction(1)})

    @classmethod
    def zero(cls) -> "ToeplitzElement":
        return cls._trusted({})

    @classmethod
    def basis(cls, sym: Sym, coeff: Scalar = 1) -> "ToeplitzElement":
        return cls({_check_toeplitz(sym): coeff})

    @classmethod
    def shift(cls, m: int) -> "ToeplitzElement":
        return cls.basis(Shift(m))

    @classmethod
    def unit(cls, i: int, j: int) -> "ToeplitzElement":
        return cls.basis(Unit(i, j))

    def __mul__(self, other):
        if isinstance(other, ToeplitzElement):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def adjoint(self) -> "ToeplitzElement":
        return adjoint(self)

    def symbol(self) -> "LaurentPoly":
        return symbol(self)

    def degree_split(self) -> Dict[int, "ToeplitzElement"]:
        return degree_split(self)

    def pure_shift_part(self) -> "ToeplitzElement":
        return ToeplitzElement._trusted({s: c for s, c in self._terms.items() if s.kind == SHIFT})

    def finite_rank_part(self) -> "ToeplitzElement":
        return ToeplitzElement._trusted({s: c for s, c in self._terms.items() if s.kind == UNIT})

    def is_compact(self) -> bool:
        return symbol(self).is_zero

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{s!r}" for s, c in self.items())


class LaurentPoly(LinearCombination[int]):
    """Laurent polynomial in the circle unitary ``u``; keys are exponents."""

    __slots__ = ()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._trusted({0: Fraction(1)})

    @classmethod
    def monomial(cls, m: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({m: coeff})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: Dict[int, Fraction] = {}
            for m, c in self._terms.items():
                for p, d in other._terms.items():
                    accumulate(out, m + p, c * d)
            return LaurentPoly._trusted(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def adjoint(self) -> "LaurentPoly":
        return LaurentPoly._trusted({-m: c for m, c in self._terms.items()})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*u^{m}" for m, c in self.items())


def mul_terms(a: Dict[Sym, Fraction], b: Dict[Sym, Fraction], product=mul_symbols) -> Dict[Sym, Fraction]:
    out: Dict[Sym, Fraction] = {}
    for x, c in a.items():
        for y, d in b.items():
            cd = c * d
            for sym, k in product(x, y):
                accumulate(out, sym, cd * k)
    return out


def mul(a: ToeplitzElement, b: ToeplitzElement) -> ToeplitzElement:
    return ToeplitzElement._trusted(mul_terms(a._terms, b._terms))


def adjoint(a: ToeplitzElement) -> ToeplitzElement:
    return ToeplitzElement._trusted({adjoint_symbol(s): c for s, c in a._terms.items()})


def canonicalize(a: ToeplitzElement) -> ToeplitzElement:
    """Re-normalize; a no-op on anything built through this module."""
    return ToeplitzElement(dict(a._terms))


def proj_P(k: int) -> ToeplitzElement:
    """P_k = e_00 + ... + e_{k-1,k-1} (0-based re-indexing of Σ_{i=1}^k e_ii)."""
    if k < 0:
        raise ValueError(f"proj_P needs k >= 0, got {k}")
    return ToeplitzElement._trusted({Unit(i, i): Fraction(1) for i in range(k)})


def proj_Pperp(k: int) -> ToeplitzElement:
    return ToeplitzElement.one() - proj_P(k)


def symbol(a: ToeplitzElement) -> LaurentPoly:
    out: Dict[int, Fraction] = {}
    for sym, c in a._terms.items():
        if sym.kind == SHIFT:
            accumulate(out, sym.a, c)
    return LaurentPoly._trusted(out)


def degree_split(a: ToeplitzElement) -> Dict[int, ToeplitzElement]:
    parts: Dict[int, Dict[Sym, Fraction]] = {}
    for sym, c in a._terms.items():
        parts.setdefault(degree(sym), {})[sym] = c
    return {d: ToeplitzElement._trusted(t) for d, t in sorted(parts.items())}


def is_projection(p: ToeplitzElement) -> bool:
    return p == adjoint(p) and mul(p, p) == p


def scalar(value: Scalar) -> ToeplitzElement:
    return ToeplitzElement.one().scale(as_fraction(value))
