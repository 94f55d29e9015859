"""
*-homomorphisms given by generator images.

A ``GenAssignment`` maps the generators of its domain to elements of its
target. Domains are either graph algebras (``FreeSignature``) or tensor
signatures, whose generators are one per slot: ``t_i`` for a standalone
Toeplitz slot, ``s_i`` for a slot inside a sphere block and ``u_i`` for a
circle slot. Applying an assignment to an element substitutes the images
and evaluates in the target; on tensor domains a basis tuple is the product
of its slot images, with Unit(i, j) read as g^i (1 - g g*) (g*)^j.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Union

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator, gauge_move
from mpkcheck.core.algebra.toeplitz import CIRCLE, SHIFT, UNIT, Sym
from mpkcheck.core.presentations.free import FreeElement, FreeSignature, Gen, Letter, U
from mpkcheck.utils.error import MissingGenerator, SignatureMismatch

logger = logging.getLogger(__name__)

Domain = Union[Signature, FreeSignature]
Element = Union[TensorElement, FreeElement]


# ───────── domains ─────────
def domain_label(domain: Domain) -> str:
    return domain.label


def slot_generator(sig: Signature, slot: int) -> Gen:
    if sig.is_circle(slot):
        return Gen("u", slot)
    return Gen("s" if sig.in_sphere_block(slot) else "t", slot)


def generators_of(domain: Domain) -> List[Gen]:
    if isinstance(domain, FreeSignature):
        return domain.generators()
    return [slot_generator(domain, k) for k in range(domain.slot_count)]


def element_of(domain: Domain, gen: Gen) -> Element:
    """The domain element named by ``gen``."""
    if isinstance(domain, FreeSignature):
        return FreeElement.gen(domain, gen)
    if gen.kind not in ("s", "t", "u") or not 0 <= gen.a < domain.slot_count or slot_generator(domain, gen.a) != gen:
        raise MissingGenerator(
            f"{gen} is not a generator of {domain}",
            details={"generator": str(gen), "algebra": domain.label},
        )
    return generator(domain, gen.a)


def one_of(domain: Domain) -> Element:
    return FreeElement.one(domain) if isinstance(domain, FreeSignature) else TensorElement.one(domain)


def zero_of(domain: Domain) -> Element:
    return FreeElement.zero(domain) if isinstance(domain, FreeSignature) else TensorElement.zero(domain)


def power(x: Element, exponent: int) -> Element:
    base = x if exponent >= 0 else x.adjoint()
    out = x.one_like()
    for _ in range(abs(exponent)):
        out = out * base
    return out


# ───────── assignments ─────────
@dataclass(eq=False)
class GenAssignment:
    name: str
    domain: Domain
    target: Domain
    images: Dict[Gen, Element]
    notes: Tuple[str, ...] = ()
    metadata: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._slot_cache: Dict[Tuple[int, Sym], Element] = {}
        self._letter_cache: Dict[Letter, Element] = {}

    @property
    def label(self) -> str:
        return f"{self.name}: {domain_label(self.domain)} -> {domain_label(self.target)}"

    def generators(self) -> List[Gen]:
        return generators_of(self.domain)

    def missing(self) -> List[Gen]:
        return [g for g in self.generators() if g not in self.images]

    def image(self, gen: Gen) -> Element:
        try:
            return self.images[gen]
        except KeyError:
            raise MissingGenerator(
                f"{self.name} assigns no image to {gen}",
                details={"map": self.name, "generator": str(gen)},
            ) from None

    def __call__(self, x: Union[Element, Gen]) -> Element:
        return apply(self, x)

    # ───────── evaluation helpers ─────────
    def _slot_image(self, slot: int, sym: Sym, sig: Signature) -> Element:
        cached = self._slot_cache.get((slot, sym))
        if cached is not None:
            return cached
        g = self.image(slot_generator(sig, slot))
        if sym.kind in (SHIFT, CIRCLE):
            value = power(g, sym.a)
        else:
            defect = g.one_like() - g * g.adjoint()
            value = power(g, sym.a) * defect * power(g, -sym.b)
        self._slot_cache[(slot, sym)] = value
        return value

    def _letter_image(self, letter: Letter) -> Element:
        cached = self._letter_cache.get(letter)
        if cached is None:
            cached = self.image(letter.gen)
            if letter.star:
                cached = cached.adjoint()
            self._letter_cache[letter] = cached
        return cached


def apply(assignment: GenAssignment, x: Union[Element, Gen]) -> Element:
    """
    Substitute generator images into ``x`` and evaluate in the target.

    Raises:
        MissingGenerator: ``x`` uses a generator without an image
        SignatureMismatch: ``x`` does not live in the assignment's domain
    """
    if isinstance(x, Gen):
        return assignment.image(x)
    if x.signature != assignment.domain:
        raise SignatureMismatch(
            f"{assignment.name} expects elements of {domain_label(assignment.domain)}, "
            f"got {domain_label(x.signature)}",
            details={"map": assignment.name, "expected": domain_label(assignment.domain),
                     "got": domain_label(x.signature)},
        )
    out = zero_of(assignment.target)
    if isinstance(x, FreeElement):
        u_image = assignment.image(U) if assignment.domain.circle else None
        for (word, m), c in x.items():
            term = assignment._letter_image(word[0])
            for letter in word[1:]:
                term = term * assignment._letter_image(letter)
            if m:
                term = term * power(u_image, m)
            out = out + term.scale(c)
        return out
    sig = assignment.domain
    for key, c in x.items():
        term = one_of(assignment.target)
        for slot, sym in enumerate(key):
            if sym.kind != UNIT and sym.a == 0:
                continue
            term = term * assignment._slot_image(slot, sym, sig)
            if term.is_zero:
                break
        if term:
            out = out + term.scale(c)
    return out


def identity_map(domain: Domain, name: str = "id") -> GenAssignment:
    images = {g: element_of(domain, g) for g in generators_of(domain)}
    return GenAssignment(name, domain, domain, images)


def compose(*maps: Union[GenAssignment, "GaugeMove"], name: str = "") -> GenAssignment:
    """``compose(f, g, h)`` is f∘g∘h; the innermost map must be a GenAssignment."""
    inner = maps[-1]
    if not isinstance(inner, GenAssignment):
        raise TypeError("the innermost map of a composite must be a GenAssignment")
    images = dict(inner.images)
    target = inner.target
    for outer in reversed(maps[:-1]):
        if outer.domain != target:
            raise SignatureMismatch(
                f"cannot compose {outer.name} after a map landing in {domain_label(target)}",
                details={"outer": outer.name, "outer_domain": domain_label(outer.domain),
                         "inner_target": domain_label(target)},
            )
        images = {g: outer(x) for g, x in images.items()}
        target = outer.target
    label = name or "∘".join(m.name for m in maps)
    return GenAssignment(label, inner.domain, target, images)


@dataclass(eq=False)
class GaugeMove:
    """The gauging automorphism φ of a signature with a circle slot, as a map."""

    signature: Signature
    slot: int
    inverse: bool = False
    name: str = "φ"

    @property
    def domain(self) -> Signature:
        return self.signature

    @property
    def target(self) -> Signature:
        return self.signature

    def __call__(self, x: TensorElement) -> TensorElement:
        return gauge_move(x, self.slot, self.inverse)


# ───────── tensoring with identities ─────────
def _embed_left(x: Element, target: Domain) -> Element:
    """x ⊗ 1 in an extended target."""
    if isinstance(x, FreeElement):
        return FreeElement._trusted(dict(x.terms), target)
    extra = Signature(target.blocks[len(x.signature.blocks):])
    return x.tensor(TensorElement.one(extra))


def with_unit_factor(assignment: GenAssignment, extra: Signature, name: str = "") -> GenAssignment:
    """assignment ⊗ 1: images x ↦ x ⊗ 1 in ``target + extra``."""
    if not isinstance(assignment.target, Signature):
        raise SignatureMismatch(f"{assignment.name} lands in a graph algebra; cannot append {extra}")
    target = assignment.target + extra
    images = {g: _embed_left(x, target) for g, x in assignment.images.items()}
    return GenAssignment(name or f"{assignment.name}⊗1", assignment.domain, target, images)


def tensor_identity(assignment: GenAssignment, extra: Signature = Signature.circle(), name: str = "") -> GenAssignment:
    """
    assignment ⊗ id for an extra right-hand factor.

    Graph-algebra domains and targets only accept a circle factor (the
    ``FreeSignature.circle`` flag); tensor signatures accept any blocks.
    """
    dom, tgt = assignment.domain, assignment.target
    if isinstance(dom, FreeSignature):
        if extra != Signature.circle() or dom.circle:
            raise SignatureMismatch(f"graph algebra {dom.label} only extends by a single circle factor")
        new_domain: Domain = dom.with_circle()
        new_gens = [U]
    else:
        new_domain = dom + extra
        new_gens = [slot_generator(new_domain, k) for k in range(dom.slot_count, new_domain.slot_count)]

    if isinstance(tgt, FreeSignature):
        if extra != Signature.circle() or tgt.circle:
            raise SignatureMismatch(f"graph algebra {tgt.label} only extends by a single circle factor")
        new_target: Domain = tgt.with_circle()
        new_images = [FreeElement.gen(new_target, U)]
    else:
        new_target = tgt + extra
        new_images = [generator(new_target, k) for k in range(tgt.slot_count, new_target.slot_count)]

    images: Dict[Gen, Element] = {g: _embed_left(x, new_target) for g, x in assignment.images.items()}
    images.update(zip(new_gens, new_images))
    return GenAssignment(name or f"{assignment.name}⊗id", new_domain, new_target, images)

