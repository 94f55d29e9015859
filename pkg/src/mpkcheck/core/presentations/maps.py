"""
Named *-homomorphisms between graph algebras, Toeplitz tensor powers and
multipullback quantum spheres.

Index conventions: ``sphere(n)`` is C(S^{2n+1}_H) with n+1 slots,
``toeplitz(n)`` is T^{⊗n}, ``Σⁿ``/``Γⁿ`` have vertices v_0..v_n.

    sigma(n)  T^{⊗n+1} -> C(S^{2n+1}_H)       t_i ↦ s_i
    rho(n)    C(Γⁿ) -> T^{⊗n}                 edges by the product formulas below
    omega(n)  C(Σⁿ) -> C(S^{2n+1}_H)          S_eij ↦ s_i s_j s_j* ∏_{k<j}(1 - s_k s_k*)
    del(n)    C(Γⁿ) -> C(Σ^{n-1})             P_vn, S_e with r(e) = v_n ↦ 0
    r(n)      C(Σⁿ) -> C(Γⁿ)                  S_enn ↦ P_vn
    p1(n)     C(S^{2n+1}_H) -> C(S^{2n-1}_H)⊗T    s_n ↦ 1⊗t
    p2(n)     C(S^{2n+1}_H) -> T^{⊗n}⊗C(S¹)       s_i ↦ t_i⊗1, s_n ↦ 1⊗u
    pi1(n)    C(S^{2n-1}_H)⊗T -> C(S^{2n-1}_H)⊗C(S¹)   id⊗σ
    pi2(n)    T^{⊗n}⊗C(S¹) -> C(S^{2n-1}_H)⊗C(S¹)     σ_{n-1}⊗id
    delta(n)  C(S^{2n+1}_H) -> C(S^{2n+1}_H)⊗C(S¹)    s_i ↦ s_i⊗u
    delta_q(n) C(Σⁿ) -> C(Σⁿ)⊗C(S¹)           S_e ↦ S_e⊗u, P_v ↦ P_v⊗1
    circle    C(Σ⁰) -> C(S¹)                  S_e00 ↦ u
    toeplitz_graph          C(Γ¹) -> T        S_e00 ↦ t²t*, S_e01 ↦ t(1-tt*)
    toeplitz_graph_literal  as above with P_v1 ↦ 1 - t* (literal form)

Where only edge images are known the vertex projections are derived as
img(S_e)* img(S_e) for an edge ending at the vertex, the loop e_vv first.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable, Dict, List

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator
from mpkcheck.core.presentations.assignment import Element, GenAssignment, generators_of, slot_generator
from mpkcheck.core.presentations.free import FreeElement, FreeSignature, Gen, P, S
from mpkcheck.core.presentations.graphs import Graph, graph_gamma, graph_sigma
from mpkcheck.utils.error import InvalidAssignment, UnknownMap, UnsupportedIndex

logger = logging.getLogger(__name__)

VERTEX_NOTE = "vertex images derived as img(S_e)*img(S_e) for an edge ending at the vertex"
LITERAL_NOTE = (
    "eq:Ss in its literal form sends P_v1 to 1 - t*, which is not a projection; "
    "the checked map uses the Cuntz-Krieger forced image 1 - tt*"
)


def _defect(g: TensorElement) -> TensorElement:
    """1 - g g*."""
    return g.one_like() - g * g.adjoint()


def _defect_product(sig: Signature, slots: range) -> TensorElement:
    out = TensorElement.one(sig)
    for k in slots:
        out = out * _defect(generator(sig, k))
    return out


def _derive_vertices(graph: Graph, images: Dict[Gen, Element]) -> None:
    for v in graph.vertices:
        if P(v) in images:
            continue
        incoming = graph.edges_into(v)
        if not incoming:
            raise UnsupportedIndex(f"vertex v{v} of {graph.label} has no incoming edge to derive its image")
        edge = (v, v) if (v, v) in graph.edges else incoming[0]
        x = images[S(*edge)]
        images[P(v)] = x.adjoint() * x


def _require(n: int, minimum: int, name: str) -> None:
    if n < minimum:
        raise UnsupportedIndex(
            f"map '{name}' needs n >= {minimum}, got {n}", details={"map": name, "n": n}
        )


# ───────── maps into tensor signatures ─────────
def sigma_map(n: int) -> GenAssignment:
    _require(n, 0, "sigma")
    domain, target = Signature.toeplitz(n + 1), Signature.sphere(n + 1)
    images = {slot_generator(domain, i): generator(target, i) for i in range(n + 1)}
    return GenAssignment(f"σ_{n}", domain, target, images)


def rho_map(n: int) -> GenAssignment:
    _require(n, 1, "rho")
    graph = graph_gamma(n)
    target = Signature.toeplitz(n)
    t = [generator(target, k) for k in range(n)]
    images: Dict[Gen, Element] = {}
    for i, j in graph.sorted_edges:
        if j < n:
            images[S(i, j)] = t[i] * t[j] * t[j].adjoint() * _defect_product(target, range(j))
        else:
            images[S(i, j)] = t[i] * _defect_product(target, range(n))
    _derive_vertices(graph, images)
    return GenAssignment(f"ρ_{n}", FreeSignature(graph), target, images, notes=(VERTEX_NOTE,))


def omega_map(n: int) -> GenAssignment:
    _require(n, 0, "omega")
    graph = graph_sigma(n)
    target = Signature.sphere(n + 1)
    s = [generator(target, k) for k in range(n + 1)]
    images: Dict[Gen, Element] = {}
    for i, j in graph.sorted_edges:
        images[S(i, j)] = s[i] * s[j] * s[j].adjoint() * _defect_product(target, range(j))
    _derive_vertices(graph, images)
    return GenAssignment(f"ω_{n}", FreeSignature(graph), target, images, notes=(VERTEX_NOTE,))


def p1_map(n: int) -> GenAssignment:
    _require(n, 1, "p1")
    domain = Signature.sphere(n + 1)
    target = Signature.sphere(n) + Signature.toeplitz(1)
    images = {slot_generator(domain, i): generator(target, i) for i in range(n + 1)}
    return GenAssignment(f"p1_{n}", domain, target, images)


def p2_map(n: int) -> GenAssignment:
    _require(n, 1, "p2")
    domain = Signature.sphere(n + 1)
    target = Signature.toeplitz(n) + Signature.circle()
    images = {slot_generator(domain, i): generator(target, i) for i in range(n + 1)}
    return GenAssignment(f"p2_{n}", domain, target, images)


def pi1_map(n: int) -> GenAssignment:
    _require(n, 1, "pi1")
    domain = Signature.sphere(n) + Signature.toeplitz(1)
    target = Signature.sphere(n) + Signature.circle()
    images = {slot_generator(domain, i): generator(target, i) for i in range(n + 1)}
    return GenAssignment(f"π1_{n}", domain, target, images)


def pi2_map(n: int) -> GenAssignment:
    _require(n, 1, "pi2")
    domain = Signature.toeplitz(n) + Signature.circle()
    target = Signature.sphere(n) + Signature.circle()
    images = {slot_generator(domain, i): generator(target, i) for i in range(n + 1)}
    return GenAssignment(f"π2_{n}", domain, target, images)


def delta_map(n: int) -> GenAssignment:
    _require(n, 0, "delta")
    domain = Signature.sphere(n + 1)
    target = domain + Signature.circle()
    u = generator(target, n + 1)
    images = {slot_generator(domain, i): generator(target, i) * u for i in range(n + 1)}
    return GenAssignment(f"δ_{n}", domain, target, images)


def toeplitz_graph_map(literal: bool = False) -> GenAssignment:
    target = Signature.toeplitz(1)
    t = generator(target, 0)
    ts = t.adjoint()
    one = t.one_like()
    images: Dict[Gen, Element] = {
        S(0, 0): t * t * ts,
        S(0, 1): t * (one - t * ts),
        P(0): t * ts,
        P(1): one - ts if literal else one - t * ts,
    }
    name = "eq:Ss(literal)" if literal else "eq:Ss"
    return GenAssignment(name, FreeSignature(graph_gamma(1)), target, images, notes=(LITERAL_NOTE,))


def circle_map() -> GenAssignment:
    target = Signature.circle()
    u = generator(target, 0)
    images: Dict[Gen, Element] = {S(0, 0): u, P(0): u.one_like()}
    return GenAssignment("eq:circle", FreeSignature(graph_sigma(0)), target, images)


# ───────── maps between graph algebras ─────────
def del_map(n: int) -> GenAssignment:
    _require(n, 1, "del")
    domain, target = FreeSignature(graph_gamma(n)), FreeSignature(graph_sigma(n - 1))
    images: Dict[Gen, Element] = {}
    for g in generators_of(domain):
        if (g.kind == "P" and g.a == n) or (g.kind == "S" and g.b == n):
            images[g] = FreeElement.zero(target)
        else:
            images[g] = FreeElement.gen(target, g)
    return GenAssignment(f"∂_{n}", domain, target, images)


def r_map(n: int) -> GenAssignment:
    _require(n, 1, "r")
    domain, target = FreeSignature(graph_sigma(n)), FreeSignature(graph_gamma(n))
    images: Dict[Gen, Element] = {}
    for g in generators_of(domain):
        images[g] = FreeElement.gen(target, P(n)) if g == S(n, n) else FreeElement.gen(target, g)
    return GenAssignment(f"r_{n}", domain, target, images)


def delta_q_map(n: int) -> GenAssignment:
    _require(n, 0, "delta_q")
    domain = FreeSignature(graph_sigma(n))
    target = domain.with_circle()
    u = FreeElement.gen(target, Gen("u"))
    images: Dict[Gen, Element] = {}
    for g in generators_of(domain):
        x = FreeElement.gen(target, g)
        images[g] = x * u if g.kind == "S" else x
    return GenAssignment(f"δ_q{n}", domain, target, images)


BUILDERS: Dict[str, Callable[[int], GenAssignment]] = {
    "sigma": sigma_map,
    "rho": rho_map,
    "omega": omega_map,
    "del": del_map,
    "r": r_map,
    "p1": p1_map,
    "p2": p2_map,
    "pi1": pi1_map,
    "pi2": pi2_map,
    "delta": delta_map,
    "delta_q": delta_q_map,
    "circle": lambda n: circle_map(),
    "toeplitz_graph": lambda n: toeplitz_graph_map(literal=False),
    "toeplitz_graph_literal": lambda n: toeplitz_graph_map(literal=True),
}

# Known to violate its relations; never validated.
UNVALIDATED = frozenset({"toeplitz_graph_literal"})


def map_names() -> List[str]:
    return sorted(BUILDERS)


@lru_cache(maxsize=None)
def build_map(name: str, n: int = 1, validate: bool = True) -> GenAssignment:
    """
    Generator-image table of a named map.

    With ``validate`` the images are checked against the domain relations
    (Cuntz-Krieger relations for graph algebras, the sphere presentation
    otherwise) and an ``InvalidAssignment`` is raised if any fails.

    Raises:
        UnknownMap, UnsupportedIndex, InvalidAssignment
    """
    builder = BUILDERS.get(name)
    if builder is None:
        raise UnknownMap(f"unknown map '{name}'", details={"map": name, "known": map_names()})
    assignment = builder(n)
    if validate and name not in UNVALIDATED:
        from mpkcheck.core.presentations.checks import relation_report

        report = relation_report(assignment)
        if report.status == "fail":
            raise InvalidAssignment(
                f"{assignment.label} violates its domain relations",
                details={"map": name, "n": n, "witness": report.witness},
            )
        logger.debug(f"validated {assignment.label} ({report.metadata.get('relations_checked')} relations)")
    return assignment
