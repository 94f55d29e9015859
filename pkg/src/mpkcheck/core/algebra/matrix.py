"""Matrices over tensor algebras, for projections and unitary witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

from mpkcheck.core.algebra.signature import Signature, require_same
from mpkcheck.core.algebra.tensor import TensorElement, tmul
from mpkcheck.utils.error import ShapeMismatch, SignatureMismatch


@dataclass(frozen=True)
class AlgMatrix:
    signature: Signature
    entries: Tuple[Tuple[TensorElement, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or not self.entries[0]:
            raise ShapeMismatch("matrices need at least one row and one column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ShapeMismatch("ragged matrix rows", details={"widths": [len(r) for r in self.entries]})
            for entry in row:
                if entry.signature != self.signature:
                    raise SignatureMismatch(
                        f"entry in {entry.signature} inside a matrix over {self.signature}",
                        details={"entry": entry.signature.label, "matrix": self.signature.label},
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[TensorElement]]) -> "AlgMatrix":
        return cls(rows[0][0].signature, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, sig: Signature, size: int) -> "AlgMatrix":
        one, zero = TensorElement.one(sig), TensorElement.zero(sig)
        return cls(sig, tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size)))

    @classmethod
    def zeros(cls, sig: Signature, rows: int, cols: int) -> "AlgMatrix":
        zero = TensorElement.zero(sig)
        return cls(sig, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, items: Sequence[TensorElement]) -> "AlgMatrix":
        sig = items[0].signature
        zero = TensorElement.zero(sig)
        return cls(sig, tuple(tuple(x if i == j else zero for j in range(len(items))) for i, x in enumerate(items)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> TensorElement:
        i, j = index
        return self.entries[i][j]

    def map(self, fn: Callable[[TensorElement], TensorElement]) -> "AlgMatrix":
        return AlgMatrix.from_rows([[fn(x) for x in row] for row in self.entries])

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        _conformable_sum(self, other)
        return AlgMatrix(self.signature, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        ))

    def __sub__(self, other: "AlgMatrix") -> "AlgMatrix":
        _conformable_sum(self, other)
        return AlgMatrix(self.signature, tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        ))

    def __mul__(self, other: "AlgMatrix") -> "AlgMatrix":
        return mat_mul(self, other)

    def adjoint(self) -> "AlgMatrix":
        return mat_adjoint(self)

    def is_zero(self) -> bool:
        return all(x.is_zero for row in self.entries for x in row)

    def max_shift(self) -> int:
        return max(x.max_shift() for row in self.entries for x in row)


def _conformable_sum(p: AlgMatrix, q: AlgMatrix) -> None:
    require_same(p.signature, q.signature)
    if p.shape != q.shape:
        raise ShapeMismatch(f"shapes {p.shape} and {q.shape} differ")


def mat_mul(p: AlgMatrix, q: AlgMatrix) -> AlgMatrix:
    require_same(p.signature, q.signature)
    if p.cols != q.rows:
        raise ShapeMismatch(f"cannot multiply {p.shape} by {q.shape}", details={"left": p.shape, "right": q.shape})
    rows = []
    for i in range(p.rows):
        row = []
        for j in range(q.cols):
            acc = TensorElement.zero(p.signature)
            for k in range(p.cols):
                a, b = p.entries[i][k], q.entries[k][j]
                if a and b:
                    acc = acc + tmul(a, b)
            row.append(acc)
        rows.append(tuple(row))
    return AlgMatrix(p.signature, tuple(rows))


def mat_adjoint(p: AlgMatrix) -> AlgMatrix:
    return AlgMatrix(p.signature, tuple(
        tuple(p.entries[i][j].adjoint() for i in range(p.rows)) for j in range(p.cols)
    ))


def boxplus(p: AlgMatrix, q: AlgMatrix) -> AlgMatrix:
    """Block-diagonal direct sum p ⊞ q."""
    require_same(p.signature, q.signature)
    zero = TensorElement.zero(p.signature)
    rows = [tuple(row) + (zero,) * q.cols for row in p.entries]
    rows += [(zero,) * p.cols + tuple(row) for row in q.entries]
    return AlgMatrix(p.signature, tuple(rows))


def is_projection(p: AlgMatrix) -> bool:
    if p.rows != p.cols:
        return False
    return mat_adjoint(p) == p and mat_mul(p, p) == p


def is_selfadjoint_unitary(m: AlgMatrix) -> bool:
    if m.rows != m.cols:
        return False
    return mat_adjoint(m) == m and mat_mul(m, m) == AlgMatrix.identity(m.signature, m.rows)


def scalar_matrix(sig: Signature, x: TensorElement) -> AlgMatrix:
    """1×1 matrix holding ``x``."""
    return AlgMatrix(sig, ((x,),))
