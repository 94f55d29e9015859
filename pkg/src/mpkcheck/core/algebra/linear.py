"""Finite exact-rational linear combinations over hashable, ordered keys."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Dict, Generic, Hashable, Iterable, Iterator, Mapping, Tuple, TypeVar, Union

K = TypeVar("K", bound=Hashable)
Scalar = Union[int, Fraction]


def as_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational coefficient required, got {type(value).__name__}")


def accumulate(target: Dict[Any, Fraction], key: Any, coeff: Fraction) -> None:
    """Add ``coeff`` at ``key`` dropping the entry when it cancels to zero."""
    value = target.get(key, 0) + coeff
    if value:
        target[key] = value
    else:
        target.pop(key, None)


class LinearCombination(Generic[K]):
    """
    Immutable sparse vector ``Σ c_k · k`` with Fraction coefficients.

    Subclasses describe the space they live in through ``_space`` and build
    siblings with ``_like``; arithmetic is only defined between elements of
    the same space.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[K, Any] | Iterable[Tuple[K, Any]] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: Dict[K, Fraction] = {}
        for key, coeff in items:
            accumulate(clean, key, as_fraction(coeff))
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[K, Fraction], *args: Any):
        """Wrap an already canonical dict without copying."""
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        obj._init_space(*args)
        return obj

    def _init_space(self, *args: Any) -> None:
        pass

    def _space(self) -> Any:
        return None

    def _like(self, terms: Dict[K, Fraction]):
        return type(self)._trusted(terms)

    def _check_space(self, other: "LinearCombination[K]") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    # ───────── container protocol ─────────
    @property
    def terms(self) -> Dict[K, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[K, Fraction]]:
        """Terms in deterministic key order."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._space() == other._space() and self._terms == other._terms  # type: ignore[union-attr]

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._space(), frozenset(self._terms.items())))
        return self._hash

    # ───────── vector space ─────────
    def __add__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        self._check_space(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            accumulate(out, key, coeff)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: Scalar):
        factor = as_fraction(factor)
        if not factor:
            return self._like({})
        return self._like({k: c * factor for k, c in self._terms.items()})

