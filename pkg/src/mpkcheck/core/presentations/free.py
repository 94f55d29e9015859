"""
Elements of graph algebras given by their Cuntz-Krieger presentation.

Words in P_v, S_e and S_e* are reduced with rewrite rules that hold in
every graph algebra:

    x y = 0                 when the right vertex of x differs from the left vertex of y
    P_v y = y,  x P_v = x   when the vertices match
    S_e* S_f = δ_ef P_r(e)  for edges with a common source

where P_v sits at v on both sides, S_e runs from s(e) to r(e) and S_e* back.
These rules are sound but not complete: two reduced words can still be equal
in the algebra (for instance through the sum relation). Decisions of
equality are therefore made in a faithful model, see ``presentations.faithful``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from mpkcheck.core.algebra.linear import LinearCombination, accumulate
from mpkcheck.core.presentations.graphs import Edge, Graph
from mpkcheck.utils.error import MissingGenerator, SignatureMismatch


class Gen(NamedTuple):
    """Generator name: P_v, S_e, slot generators t_i / s_i / u_i, or the free circle u."""

    kind: str
    a: int = -1
    b: int = -1

    def __str__(self) -> str:
        if self.kind == "P":
            return f"P_v{self.a}"
        if self.kind == "S":
            sep = "_" if max(self.a, self.b) >= 10 else ""
            return f"S_e{self.a}{sep}{self.b}"
        if self.kind == "u" and self.a < 0:
            return "u"
        return f"{self.kind}{self.a}"

    @property
    def edge(self) -> Edge:
        return (self.a, self.b)


def P(v: int) -> Gen:
    return Gen("P", v)


def S(i: int, j: int) -> Gen:
    return Gen("S", i, j)


U = Gen("u")


class Letter(NamedTuple):
    gen: Gen
    star: bool = False

    @property
    def left(self) -> int:
        g = self.gen
        if g.kind == "P":
            return g.a
        return g.b if self.star else g.a

    @property
    def right(self) -> int:
        g = self.gen
        if g.kind == "P":
            return g.a
        return g.a if self.star else g.b

    def adjoint(self) -> "Letter":
        return self if self.gen.kind == "P" else Letter(self.gen, not self.star)

    def __str__(self) -> str:
        return f"{self.gen}*" if self.star else str(self.gen)


Word = Tuple[Letter, ...]
FreeKey = Tuple[Word, int]


def _combine(x: Letter, y: Letter) -> Optional[Tuple[Letter, ...]]:
    """Rewrite an adjacent pair; ``None`` means the product vanishes."""
    if x.right != y.left:
        return None
    if x.gen.kind == "P":
        return (y,)
    if y.gen.kind == "P":
        return (x,)
    if x.star and not y.star:
        if x.gen == y.gen:
            return (Letter(P(x.gen.b)),)
        return None
    return (x, y)


def reduce_word(word: Iterable[Letter]) -> Optional[Word]:
    stack: List[Letter] = []
    for letter in word:
        pending = [letter]
        while pending:
            y = pending.pop()
            if not stack:
                stack.append(y)
                continue
            combined = _combine(stack[-1], y)
            if combined is None:
                return None
            if len(combined) == 2:
                stack.append(y)
            else:
                stack.pop()
                pending.append(combined[0])
    return tuple(stack) if stack else None


def word_degree(word: Word) -> int:
    return sum((-1 if l.star else 1) for l in word if l.gen.kind == "S")


@dataclass(frozen=True)
class FreeSignature:
    """A graph algebra, optionally tensored with C(S¹) on the right."""

    graph: Graph
    circle: bool = False

    @property
    def label(self) -> str:
        return f"{self.graph.label}⊗C" if self.circle else self.graph.label

    def generators(self) -> List[Gen]:
        gens = [P(v) for v in self.graph.vertices] + [S(*e) for e in self.graph.sorted_edges]
        if self.circle:
            gens.append(U)
        return gens

    def with_circle(self) -> "FreeSignature":
        return FreeSignature(self.graph, True)

    def check_generator(self, gen: Gen) -> None:
        valid = (
            (gen.kind == "P" and 0 <= gen.a <= self.graph.n)
            or (gen.kind == "S" and gen.edge in self.graph.edges)
            or (gen == U and self.circle)
        )
        if not valid:
            raise MissingGenerator(
                f"{gen} is not a generator of {self.label}",
                details={"generator": str(gen), "algebra": self.label},
            )


class FreeElement(LinearCombination[FreeKey]):
    """Finite combination of reduced words (times u^m when the circle factor is present)."""

    __slots__ = ("_fsig",)

    def __init__(self, fsig: FreeSignature, terms=None):
        reduced: Dict[FreeKey, Fraction] = {}
        for (word, m), c in dict(terms or {}).items():
            w = reduce_word(word)
            if w is not None:
                accumulate(reduced, (w, m), Fraction(c))
        super().__init__(reduced)
        self._fsig = fsig

    def _init_space(self, fsig: FreeSignature) -> None:
        self._fsig = fsig

    def _space(self) -> FreeSignature:
        return self._fsig

    def _like(self, terms):
        return FreeElement._trusted(terms, self._fsig)

    def _check_space(self, other) -> None:
        super()._check_space(other)
        if other._fsig != self._fsig:
            raise SignatureMismatch(
                f"{self._fsig.label} vs {other._fsig.label}",
                details={"left": self._fsig.label, "right": other._fsig.label},
            )

    @property
    def signature(self) -> FreeSignature:
        return self._fsig

    @classmethod
    def zero(cls, fsig: FreeSignature) -> "FreeElement":
        return cls._trusted({}, fsig)

    @classmethod
    def one(cls, fsig: FreeSignature) -> "FreeElement":
        return cls._trusted({((Letter(P(v)),), 0): Fraction(1) for v in fsig.graph.vertices}, fsig)

    @classmethod
    def gen(cls, fsig: FreeSignature, gen: Gen, star: bool = False) -> "FreeElement":
        fsig.check_generator(gen)
        if gen == U:
            return cls._trusted(
                {((Letter(P(v)),), -1 if star else 1): Fraction(1) for v in fsig.graph.vertices}, fsig
            )
        return cls._trusted({((Letter(gen, star and gen.kind == "S"),), 0): Fraction(1)}, fsig)

    @classmethod
    def word(cls, fsig: FreeSignature, letters: Iterable[Letter], u_exp: int = 0) -> "FreeElement":
        letters = tuple(letters)
        for letter in letters:
            fsig.check_generator(letter.gen)
        return cls(fsig, {(tuple(letters), u_exp): 1})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            self._check_space(other)
            out: Dict[FreeKey, Fraction] = {}
            for (w1, m1), c1 in self._terms.items():
                for (w2, m2), c2 in other._terms.items():
                    w = reduce_word(w1 + w2)
                    if w is not None:
                        accumulate(out, (w, m1 + m2), c1 * c2)
            return FreeElement._trusted(out, self._fsig)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def adjoint(self) -> "FreeElement":
        out: Dict[FreeKey, Fraction] = {}
        for (word, m), c in self._terms.items():
            accumulate(out, (tuple(l.adjoint() for l in reversed(word)), -m), c)
        return FreeElement._trusted(out, self._fsig)

    def one_like(self) -> "FreeElement":
        return FreeElement.one(self._fsig)

    def zero_like(self) -> "FreeElement":
        return FreeElement.zero(self._fsig)

    def degree_split(self) -> Dict[int, "FreeElement"]:
        parts: Dict[int, Dict[FreeKey, Fraction]] = {}
        for (word, m), c in self._terms.items():
            parts.setdefault(word_degree(word) + m, {})[(word, m)] = c
        return {d: FreeElement._trusted(t, self._fsig) for d, t in sorted(parts.items())}

    def is_homogeneous(self, deg: Optional[int] = None) -> bool:
        degrees = set(self.degree_split())
        return len(degrees) <= 1 if deg is None else degrees <= {deg}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (word, m), c in self.items():
            body = "·".join(str(l) for l in word)
            if m:
                body = f"{body}⊗u^{m}"
            pieces.append(body if c == 1 else f"{c}·{body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"FreeElement[{self._fsig.label}]({self})"
