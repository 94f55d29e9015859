"""
Tensor products of Toeplitz, circle and sphere factors.

A ``TensorElement`` is a finite combination of slot-basis tuples over a
``Signature``. Sphere blocks model C(S^{2m-1}_H) = T^{⊗m} / K^{⊗m} through
canonical representatives: a tuple whose slots inside some sphere block are
all matrix units spans a vector of the ideal and is dropped, and nothing
else is.

Why this is sound. Inside the polynomial algebra the tuples split into
those with at least one Shift slot in the block and those made of matrix
units only. The latter span the algebraic part of K^{⊗m}. Applying the
symbol map to a slot holding a Shift kills every all-unit tuple while
sending the remaining tuples with that Shift pattern to linearly independent
elements, so a combination of the remaining tuples lies in the ideal only
if it is zero. Hence the ideal intersected with the polynomial algebra is
spanned by the all-unit tuples and quotient classes are equal exactly when
their canonical coefficient maps are.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from mpkcheck.core.algebra.linear import LinearCombination, Scalar, accumulate, as_fraction
from mpkcheck.core.algebra.signature import BlockKind, Signature, require_same
from mpkcheck.core.algebra.toeplitz import (
    CIRCLE, CIRCLE_ONE, ONE, SHIFT, UNIT, Circle, Shift, Sym, SymProduct, ToeplitzElement,
    adjoint_symbol, degree, mul_symbols, symbol_of, Unit,
)
from mpkcheck.utils.error import IncompatibleSlot, NotACircleSlot

Key = Tuple[Sym, ...]
SlotProduct = Callable[[Sym, Sym], SymProduct]


def total_degree(key: Key) -> int:
    return sum(degree(s) for s in key)


def tuple_in_ideal(key: Key, sphere_ranges: Sequence[Tuple[int, int]]) -> bool:
    """True iff some sphere block of ``key`` holds matrix units only."""
    for start, stop in sphere_ranges:
        if all(key[i].kind == UNIT for i in range(start, stop)):
            return True
    return False


def _identity_key(sig: Signature) -> Key:
    return tuple(CIRCLE_ONE if k == BlockKind.CIRCLE else ONE for k in sig.slot_kinds)


def _check_key(sig: Signature, key: Key) -> None:
    if len(key) != sig.slot_count:
        raise IncompatibleSlot(
            f"tuple of length {len(key)} does not fit signature {sig}",
            details={"signature": sig.label, "tuple": repr(key)},
        )
    for slot, (sym, kind) in enumerate(zip(key, sig.slot_kinds)):
        if (sym.kind == CIRCLE) != (kind == BlockKind.CIRCLE):
            raise IncompatibleSlot(
                f"{sym!r} cannot occupy {kind.name.lower()} slot {slot} of {sig}",
                details={"slot": slot, "symbol": repr(sym), "signature": sig.label},
            )


class TensorElement(LinearCombination[Key]):
    """Exact element of the algebra described by ``signature``."""

    __slots__ = ("_sig",)

    def __init__(self, signature: Signature, terms=None, *, canonical: bool = True):
        super().__init__(terms)
        self._sig = signature
        for key in self._terms:
            _check_key(signature, key)
        if canonical and signature.sphere_ranges:
            ranges = signature.sphere_ranges
            self._terms = {k: c for k, c in self._terms.items() if not tuple_in_ideal(k, ranges)}

    def _init_space(self, signature: Signature) -> None:
        self._sig = signature

    def _space(self) -> Signature:
        return self._sig

    def _like(self, terms: Dict[Key, Fraction]) -> "TensorElement":
        return TensorElement._trusted(terms, self._sig)

    def _check_space(self, other) -> None:
        super()._check_space(other)
        require_same(self._sig, other._sig)

    @property
    def signature(self) -> Signature:
        return self._sig

    # ───────── constructors ─────────
    @classmethod
    def zero(cls, sig: Signature) -> "TensorElement":
        return cls._trusted({}, sig)

    @classmethod
    def one(cls, sig: Signature) -> "TensorElement":
        return cls.scalar(sig, 1)

    @classmethod
    def scalar(cls, sig: Signature, value: Scalar) -> "TensorElement":
        value = as_fraction(value)
        return cls._trusted({_identity_key(sig): value} if value else {}, sig)

    @classmethod
    def from_slots(cls, sig: Signature, placed: Dict[int, Sym], coeff: Scalar = 1) -> "TensorElement":
        """Elementary tensor with ``placed`` symbols and identities elsewhere."""
        key = list(_identity_key(sig))
        for slot, sym in placed.items():
            sig._check_slot(slot)
            key[slot] = sym
        return cls(sig, {tuple(key): coeff})

    @classmethod
    def from_toeplitz(cls, sig: Signature, slot: int, x: ToeplitzElement) -> "TensorElement":
        """``1 ⊗ … ⊗ x ⊗ … ⊗ 1`` with ``x`` at a Toeplitz slot."""
        out = cls.zero(sig)
        for sym, c in x.items():
            out = out + cls.from_slots(sig, {slot: sym}, c)
        return out

    # ───────── arithmetic ─────────
    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tmul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "TensorElement":
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        out = TensorElement.one(self._sig)
        for _ in range(exponent):
            out = tmul(out, self)
        return out

    def adjoint(self) -> "TensorElement":
        return tadjoint(self)

    def one_like(self) -> "TensorElement":
        return TensorElement.one(self._sig)

    def zero_like(self) -> "TensorElement":
        return TensorElement.zero(self._sig)

    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Kronecker product into the concatenated signature."""
        out: Dict[Key, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = c1 * c2
        return TensorElement._trusted(out, self._sig + other._sig)

    # ───────── grading ─────────
    def degree_split(self) -> Dict[int, "TensorElement"]:
        parts: Dict[int, Dict[Key, Fraction]] = {}
        for key, c in self._terms.items():
            parts.setdefault(total_degree(key), {})[key] = c
        return {d: TensorElement._trusted(t, self._sig) for d, t in sorted(parts.items())}

    def is_homogeneous(self, deg: Optional[int] = None) -> bool:
        degrees = {total_degree(k) for k in self._terms}
        if deg is None:
            return len(degrees) <= 1
        return degrees <= {deg}

    def invariant_part(self) -> "TensorElement":
        return invariant_part(self)

    def max_shift(self) -> int:
        return max((abs(s.a) for k in self._terms for s in k if s.kind == SHIFT), default=0)

    # ───────── signature changes ─────────
    def reinterpret(self, sig: Signature, *, canonical: bool = True) -> "TensorElement":
        """Same tuples read in a signature with the same slot kinds (quotient or lift)."""
        if not self._sig.same_slots(sig):
            raise IncompatibleSlot(
                f"cannot reinterpret {self._sig} as {sig}",
                details={"from": self._sig.label, "to": sig.label},
            )
        return TensorElement(sig, self._terms, canonical=canonical)

    def lift(self) -> "TensorElement":
        return TensorElement._trusted(dict(self._terms), self._sig.lift())

    def in_ideal(self) -> bool:
        return in_ideal(self)

    def __repr__(self) -> str:
        from mpkcheck.core.dsl.printer import format_element

        return f"TensorElement[{self._sig}]({format_element(self)})"

    def __str__(self) -> str:
        from mpkcheck.core.dsl.printer import format_element

        return format_element(self)


# ───────── operations ─────────
@lru_cache(maxsize=1 << 18)
def _key_product(x: Key, y: Key) -> Tuple[Tuple[Key, int], ...]:
    return _expand_product(x, y, mul_symbols)


def _expand_product(x: Key, y: Key, product: SlotProduct) -> Tuple[Tuple[Key, int], ...]:
    partial: List[Tuple[Key, int]] = [((), 1)]
    for sx, sy in zip(x, y):
        factors = product(sx, sy)
        if not factors:
            return ()
        if len(factors) == 1:
            sym, k = factors[0]
            partial = [(head + (sym,), c * k) for head, c in partial]
        else:
            partial = [(head + (sym,), c * k) for head, c in partial for sym, k in factors]
    return tuple(partial)


def tmul(x: TensorElement, y: TensorElement, product: Optional[SlotProduct] = None) -> TensorElement:
    """Slotwise product, distributed over tuples and canonicalized."""
    require_same(x._sig, y._sig)
    ranges = x._sig.sphere_ranges
    out: Dict[Key, Fraction] = {}
    for kx, cx in x._terms.items():
        for ky, cy in y._terms.items():
            pieces = _key_product(kx, ky) if product is None else _expand_product(kx, ky, product)
            if not pieces:
                continue
            cxy = cx * cy
            for key, k in pieces:
                if ranges and tuple_in_ideal(key, ranges):
                    continue
                accumulate(out, key, cxy * k)
    return TensorElement._trusted(out, x._sig)


def tadd(x: TensorElement, y: TensorElement) -> TensorElement:
    return x + y


def tscale(x: TensorElement, factor: Scalar) -> TensorElement:
    return x.scale(factor)


def tadjoint(x: TensorElement) -> TensorElement:
    return TensorElement._trusted(
        {tuple(adjoint_symbol(s) for s in key): c for key, c in x._terms.items()}, x._sig
    )


def product(factors: Iterable[TensorElement], sig: Signature) -> TensorElement:
    out = TensorElement.one(sig)
    for f in factors:
        out = tmul(out, f)
    return out


def embed_generator(sig: Signature, kind: str, slot: int, *params: int) -> TensorElement:
    """
    Elementary tensor with one non-identity slot.

    ``kind`` is ``"shift"`` (params: m, default 1), ``"unit"`` (params: i, j)
    or ``"circle"`` (params: m, default 1).

    Raises:
        IncompatibleSlot: circle symbol in a Toeplitz slot or vice versa
    """
    circle_slot = sig.is_circle(slot)
    if kind == "circle":
        sym = Circle(params[0] if params else 1)
    elif kind == "shift":
        sym = Shift(params[0] if params else 1)
    elif kind == "unit":
        if len(params) != 2:
            raise ValueError("unit generators need (i, j)")
        sym = Unit(*params)
    else:
        raise ValueError(f"unknown generator kind '{kind}'")
    if circle_slot != (sym.kind == CIRCLE):
        raise IncompatibleSlot(
            f"{kind} symbol cannot be placed in {'circle' if circle_slot else 'Toeplitz'} slot {slot}",
            details={"slot": slot, "kind": kind, "signature": sig.label},
        )
    return TensorElement.from_slots(sig, {slot: sym})


def generator(sig: Signature, slot: int) -> TensorElement:
    """The canonical generator of a slot: t_i, s_i or u."""
    return embed_generator(sig, "circle" if sig.is_circle(slot) else "shift", slot)


def in_ideal(x: TensorElement) -> bool:
    """True iff every stored tuple lies in the joint compact ideal of some sphere block."""
    ranges = x.signature.sphere_ranges
    if not ranges:
        return x.is_zero
    return all(tuple_in_ideal(key, ranges) for key in x._terms)


def invariant_part(x: TensorElement) -> TensorElement:
    return TensorElement._trusted(
        {k: c for k, c in x._terms.items() if total_degree(k) == 0}, x.signature
    )


def gauge_move(x: TensorElement, target_circle_slot: int, inverse: bool = False) -> TensorElement:
    """
    Gauging automorphism: move the total degree of the other slots onto a circle slot.

    Raises:
        NotACircleSlot: the target slot is not a circle slot
    """
    sig = x.signature
    if not (0 <= target_circle_slot < sig.slot_count) or not sig.is_circle(target_circle_slot):
        raise NotACircleSlot(
            f"slot {target_circle_slot} of {sig} is not a circle slot",
            details={"slot": target_circle_slot, "signature": sig.label},
        )
    sign = -1 if inverse else 1
    out: Dict[Key, Fraction] = {}
    for key, c in x._terms.items():
        others = total_degree(key) - degree(key[target_circle_slot])
        moved = list(key)
        moved[target_circle_slot] = Circle(key[target_circle_slot].a + sign * others)
        accumulate(out, tuple(moved), c)
    return TensorElement._trusted(out, sig)


def apply_symbol_at(x: TensorElement, slot: int) -> TensorElement:
    """id ⊗ … ⊗ σ ⊗ … ⊗ id: the symbol map on one standalone Toeplitz slot."""
    target = x.signature.with_symbol_at(slot)
    out: Dict[Key, Fraction] = {}
    for key, c in x._terms.items():
        image = symbol_of(key[slot])
        if image is None:
            continue
        accumulate(out, key[:slot] + (image,) + key[slot + 1:], c)
    return TensorElement._trusted(out, target)


def symbol_vanishes_at(x: TensorElement, slot: int) -> bool:
    """Whether x is compact in ``slot``: no tuple carries a Shift there."""
    return all(key[slot].kind == UNIT for key in x._terms)
