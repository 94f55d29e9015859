"""
Checks on generator assignments: defining relations, commuting squares,
sampled injectivity and the structural identities used by the pullback
diagrams.

Every check returns a ``VerificationReport``; the first failing relation is
the witness. Elements of graph algebras are compared in their faithful
models (``presentations.faithful``).
"""

from __future__ import annotations

import itertools
import logging
import random
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator, symbol_vanishes_at, tuple_in_ideal
from mpkcheck.core.algebra.toeplitz import UNIT, Circle, Shift, Unit
from mpkcheck.core.presentations.assignment import (
    Element,
    GenAssignment,
    domain_label,
    element_of,
    generators_of,
    identity_map,
    one_of,
    slot_generator,
    zero_of,
)
from mpkcheck.core.presentations.faithful import faithful_model, is_zero_element, model_label, same_element
from mpkcheck.core.presentations.free import FreeElement, FreeSignature, Gen, Letter, P, S, U
from mpkcheck.core.presentations.graphs import Graph
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import VerificationReport
from mpkcheck.utils.error import MissingGenerator, SignatureMismatch

logger = logging.getLogger(__name__)

NONZERO_COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def _require_complete(assignment: GenAssignment) -> None:
    missing = assignment.missing()
    if missing:
        raise MissingGenerator(
            f"{assignment.name} assigns no image to {', '.join(str(g) for g in missing)}",
            details={"map": assignment.name, "missing": [str(g) for g in missing]},
        )


def _describe(assignment: GenAssignment, report: ReportBuilder) -> None:
    report.meta(map=assignment.label, target=domain_label(assignment.target))
    model = model_label(assignment.target)
    if model is not None:
        report.meta(faithful_model=model)
    for note in assignment.notes:
        report.note(note)


# ───────── defining relations ─────────
def ck_check(graph: Graph, assignment: GenAssignment, check: str = "ck_relations", **params: Any) -> VerificationReport:
    """
    Cuntz-Krieger relations for the images of P_v and S_e.

        P_v = P_v* = P_v²,  P_v P_w = 0 (v ≠ w)
        S_e* S_e = P_r(e)
        Σ_{s(e) = v} S_e S_e* = P_v   for every vertex that is not a sink

    With a circle factor, u is also checked to be a unitary commuting with
    every other image.

    Raises:
        SignatureMismatch: the assignment is not defined on C(graph)
        MissingGenerator: a generator has no image
    """
    domain = assignment.domain
    if not isinstance(domain, FreeSignature) or domain.graph != graph:
        raise SignatureMismatch(
            f"{assignment.name} is not defined on C({graph.label})",
            details={"map": assignment.name, "graph": graph.label, "domain": domain_label(domain)},
        )
    _require_complete(assignment)
    report = ReportBuilder(check, map=assignment.name, **params)
    _describe(assignment, report)
    report.meta(graph=graph.to_json())

    p = {v: assignment.image(P(v)) for v in graph.vertices}
    s = {e: assignment.image(S(*e)) for e in graph.sorted_edges}

    for v, pv in p.items():
        report.expect(f"P_v{v}* = P_v{v}", same_element(pv.adjoint(), pv),
                      reason="not a projection", image=str(pv), adjoint=str(pv.adjoint()))
        report.expect(f"P_v{v}² = P_v{v}", same_element(pv * pv, pv),
                      reason="not a projection", image=str(pv), square=str(pv * pv))
    for v, w in itertools.combinations(graph.vertices, 2):
        prod = p[v] * p[w]
        report.expect(f"P_v{v} P_v{w} = 0", is_zero_element(prod), reason="vertex projections overlap",
                      product=str(prod))

    for e, se in s.items():
        lhs = se.adjoint() * se
        report.expect(f"{S(*e)}* {S(*e)} = P_v{e[1]}", same_element(lhs, p[e[1]]),
                      lhs=str(lhs), rhs=str(p[e[1]]))

    for v in graph.vertices:
        out_edges = graph.edges_from(v)
        if not out_edges:
            report.note(f"v{v} is a sink; no sum relation")
            continue
        total = zero_of(assignment.target)
        for e in out_edges:
            total = total + s[e] * s[e].adjoint()
        report.expect(f"Σ_(s(e)=v{v}) S_e S_e* = P_v{v}", same_element(total, p[v]),
                      lhs=str(total), rhs=str(p[v]))

    if domain.circle:
        _unitary_central(assignment, report, assignment.image(U), "u",
                         [x for x in list(p.values()) + list(s.values())])
    return report.build()


def _unitary_central(assignment: GenAssignment, report: ReportBuilder, u: Element, name: str,
                     others: Sequence[Element]) -> None:
    one = one_of(assignment.target)
    report.expect(f"{name}* {name} = 1", same_element(u.adjoint() * u, one), image=str(u))
    report.expect(f"{name} {name}* = 1", same_element(u * u.adjoint(), one), image=str(u))
    for x in others:
        report.expect(f"{name} commutes with {x}", same_element(u * x, x * u), image=str(x))


def relation_check(assignment: GenAssignment, check: str = "sphere_relations", **params: Any) -> VerificationReport:
    """
    Relations of a tensor signature domain for the images g_k of its slot generators.

        g_k* g_k = 1 (and g_k g_k* = 1 for circle slots)
        g_k, g_l and g_k, g_l* commute for k ≠ l
        ∏_{k ∈ B} (1 - g_k g_k*) = 0 for every sphere block B
    """
    domain = assignment.domain
    if not isinstance(domain, Signature):
        raise SignatureMismatch(f"{assignment.name} is not defined on a tensor signature")
    _require_complete(assignment)
    report = ReportBuilder(check, map=assignment.name, **params)
    _describe(assignment, report)

    one = one_of(assignment.target)
    g = [assignment.image(slot_generator(domain, k)) for k in range(domain.slot_count)]
    names = [str(slot_generator(domain, k)) for k in range(domain.slot_count)]

    for k, x in enumerate(g):
        report.expect(f"{names[k]}* {names[k]} = 1", same_element(x.adjoint() * x, one), image=str(x))
        if domain.is_circle(k):
            report.expect(f"{names[k]} {names[k]}* = 1", same_element(x * x.adjoint(), one), image=str(x))
    for k, l in itertools.combinations(range(len(g)), 2):
        report.expect(f"[{names[k]}, {names[l]}] = 0", same_element(g[k] * g[l], g[l] * g[k]))
        report.expect(f"[{names[k]}*, {names[l]}] = 0",
                      same_element(g[k].adjoint() * g[l], g[l] * g[k].adjoint()))
    for start, stop in domain.sphere_ranges:
        defect = one
        for k in range(start, stop):
            defect = defect * (one - g[k] * g[k].adjoint())
        report.expect(f"∏_(k={start}..{stop - 1}) (1 - g_k g_k*) = 0", is_zero_element(defect),
                      product=str(defect))
    return report.build()


def relation_report(assignment: GenAssignment, **params: Any) -> VerificationReport:
    """Check an assignment against the defining relations of its domain."""
    domain = assignment.domain
    if isinstance(domain, FreeSignature):
        return ck_check(domain.graph, assignment, check="relations", **params)
    return relation_check(assignment, check="relations", **params)


def sphere_relations(n: int) -> VerificationReport:
    """Presentation relations of C(S^{2n+1}_H) hold for its own generators."""
    sig = Signature.sphere(n + 1)
    return relation_check(identity_map(sig, name=f"id_S{n + 1}"), check="sphere_relations", n=n)


# ───────── commuting squares ─────────
def square_commutes(
    top: GenAssignment,
    right: GenAssignment,
    left: GenAssignment,
    bottom: GenAssignment,
    gens: Optional[Sequence[Gen]] = None,
    check: str = "square",
    extra: Optional[Callable[[ReportBuilder], None]] = None,
    **params: Any,
) -> VerificationReport:
    """
    right∘top = bottom∘left on the domain generators.

    ``extra`` may record further relations on the same report.

    Raises:
        SignatureMismatch: the four maps do not form a square
    """
    for outer, inner in ((right, top), (bottom, left)):
        if outer.domain != inner.target:
            raise SignatureMismatch(
                f"{outer.name} cannot follow {inner.name}",
                details={"outer": outer.label, "inner": inner.label},
            )
    if top.domain != left.domain or right.target != bottom.target:
        raise SignatureMismatch(
            "square corners do not match",
            details={"top": top.label, "right": right.label, "left": left.label, "bottom": bottom.label},
        )
    report = ReportBuilder(check, **params)
    report.meta(
        domain=domain_label(top.domain),
        landing=domain_label(right.target),
        paths=[f"{right.name} ∘ {top.name}", f"{bottom.name} ∘ {left.name}"],
    )
    model = model_label(right.target)
    if model is not None:
        report.meta(faithful_model=model)

    for g in gens if gens is not None else generators_of(top.domain):
        x = element_of(top.domain, g)
        upper = right(top(x))
        lower = bottom(left(x))
        report.expect(f"square commutes on {g}", same_element(upper, lower),
                      generator=str(g), upper_path=upper, lower_path=lower)
    if extra is not None:
        extra(report)
    return report.build()


# ───────── injectivity sampling ─────────
Sample = Tuple[Hashable, str, Element]


def _graph_words(fsig: FreeSignature, max_length: int) -> List[Sample]:
    """Words S_μ S_ν* with r(μ) = r(ν), keyed by (gauge degree, left vertex, right vertex, u-power)."""
    graph = fsig.graph
    paths: List[Tuple] = [()] + list(graph.paths(max_length))
    powers = (-1, 0, 1) if fsig.circle else (0,)
    samples: Dict[Tuple, Sample] = {}
    for mu, nu in itertools.product(paths, repeat=2):
        if len(mu) + len(nu) > max_length:
            continue
        if mu and nu and mu[-1][1] != nu[-1][1]:
            continue
        if not mu and not nu:
            words = [(Letter(P(v)),) for v in graph.vertices]
        else:
            words = [tuple(Letter(S(*e)) for e in mu) + tuple(Letter(S(*e), True) for e in reversed(nu))]
        for word in words:
            for m in powers:
                x = FreeElement.word(fsig, word, m)
                if x.is_zero:
                    continue
                ((reduced, _),) = x.terms.keys()
                key = (len(mu) - len(nu) + m, reduced[0].left, reduced[-1].right, m)
                samples.setdefault((reduced, m), (key, str(x), x))
    return list(samples.values())


def _tensor_words(sig: Signature, count: int, rng: random.Random) -> List[Sample]:
    """Random canonical basis tuples; distinct tuples are linearly independent."""
    choices = []
    for k in range(sig.slot_count):
        if sig.is_circle(k):
            choices.append([Circle(m) for m in range(-2, 3)])
        else:
            choices.append([Shift(m) for m in range(-2, 3)] + [Unit(i, j) for i in range(2) for j in range(2)])
    samples: Dict[Tuple, Sample] = {}
    for k in range(sig.slot_count):
        key = tuple(generator(sig, k).terms)[0]
        samples[key] = (key, str(generator(sig, k)), generator(sig, k))
    attempts = 0
    while len(samples) < count + sig.slot_count and attempts < 20 * count:
        attempts += 1
        key = tuple(rng.choice(c) for c in choices)
        if key in samples or tuple_in_ideal(key, sig.sphere_ranges):
            continue
        x = TensorElement(sig, {key: 1})
        samples[key] = (key, str(x), x)
    return list(samples.values())


def _canonical(x: Element) -> Hashable:
    if isinstance(x, FreeElement):
        model = faithful_model(x.signature)
        return model(x) if model is not None else x
    return x


def injectivity_sample(
    assignment: GenAssignment,
    samples: int = 100,
    seed: int = 42,
    max_length: int = 4,
    check: str = "injectivity",
    **params: Any,
) -> VerificationReport:
    """
    Search for a provably nonzero element with zero image.

    Inputs are single words, differences of two words with equal images and
    random combinations with coefficients in {-3..3}\\{0}. An input counts as
    provably nonzero when one of its words has a grading/vertex key shared by
    no other word of the input: compressing by vertex projections and taking
    a gauge component isolates that word.
    """
    _require_complete(assignment)
    rng = random.Random(seed)
    domain = assignment.domain
    report = ReportBuilder(check, map=assignment.name, samples=samples, seed=seed, **params)
    _describe(assignment, report)
    if isinstance(domain, FreeSignature):
        pool = _graph_words(domain, max_length)
        report.meta(word_length=max_length)
    else:
        pool = _tensor_words(domain, samples, rng)
    images = [assignment(x) for _, _, x in pool]
    report.meta(pool_size=len(pool))

    for (key, text, _), image in zip(pool, images):
        report.expect(f"{text} has nonzero image", not is_zero_element(image), input=text, image=str(image))

    by_image: Dict[Hashable, List[int]] = {}
    for index, image in enumerate(images):
        by_image.setdefault(_canonical(image), []).append(index)
    for indices in by_image.values():
        for a, b in itertools.combinations(indices, 2):
            if pool[a][0] != pool[b][0]:
                report.expect(f"{pool[a][1]} and {pool[b][1]} have distinct images", False,
                              input=f"{pool[a][1]} - {pool[b][1]}", image="0")

    by_key: Dict[Hashable, List[int]] = {}
    for index, (key, _, _) in enumerate(pool):
        by_key.setdefault(key, []).append(index)
    keys = list(by_key)
    combos = 0
    for _ in range(samples if len(keys) >= 2 else 0):
        chosen = rng.sample(keys, min(len(keys), rng.randint(2, 4)))
        picks = [rng.choice(by_key[k]) for k in chosen]
        coeffs = [rng.choice(NONZERO_COEFFICIENTS) for _ in picks]
        image = zero_of(assignment.target)
        for c, i in zip(coeffs, picks):
            image = image + images[i].scale(c)
        text = " + ".join(f"({c})·{pool[i][1]}" for c, i in zip(coeffs, picks))
        combos += 1
        report.expect("random combination has nonzero image", not is_zero_element(image), input=text,
                      image=str(image))
    report.meta(combinations=combos)
    return report.build()


# ───────── structural identities ─────────
def _defect_product(sig: Signature, slots) -> TensorElement:
    out = TensorElement.one(sig)
    for k in slots:
        g = generator(sig, k)
        out = out * (out.one_like() - g * g.adjoint())
    return out


def rho_range_identities(n: int) -> VerificationReport:
    """
    Identities of ρ_n used to identify its range:

        Σ_{j ≥ i} ρ(P_vj) = ∏_{k<i} (1 - t_k t_k*)          (0 ≤ i ≤ n)
        Σ_j ρ(S_eij)     = t_i ∏_{k<i} (1 - t_k t_k*)       (0 ≤ i < n)
        ρ(P_vj)          = t_j t_j* ∏_{k<j} (1 - t_k t_k*)  (j < n)
    """
    from mpkcheck.core.presentations.maps import build_map

    rho = build_map("rho", n)
    sig = rho.target
    graph = rho.domain.graph
    report = ReportBuilder("rho_range_identities", n=n)
    _describe(rho, report)
    t = [generator(sig, k) for k in range(n)]
    for i in range(n + 1):
        lhs = zero_of(sig)
        for j in range(i, n + 1):
            lhs = lhs + rho(P(j))
        report.expect_equal(f"Σ_(j≥{i}) ρ(P_vj) = ∏_(k<{i})(1 - t_k t_k*)", lhs, _defect_product(sig, range(i)))
    for i in range(n):
        lhs = zero_of(sig)
        for e in graph.edges_from(i):
            lhs = lhs + rho(S(*e))
        report.expect_equal(f"Σ_j ρ(S_e{i}j) = t_{i} ∏_(k<{i})(1 - t_k t_k*)", lhs,
                            t[i] * _defect_product(sig, range(i)))
    for j in range(n):
        report.expect_equal(f"ρ(P_v{j}) = t_{j} t_{j}* ∏_(k<{j})(1 - t_k t_k*)", rho(P(j)),
                            t[j] * t[j].adjoint() * _defect_product(sig, range(j)))
    return report.build()


def compacts_in_image(n: int, max_index: int = 2) -> VerificationReport:
    """
    The compact tensors lie in the image of ρ_n.

    E = ρ_n(P_vn) = e_00 ⊗ … ⊗ e_00 must be nonzero and compact in every slot.
    A bounded search over monomials X(a) E X(b)*, with
    X(a) = x_0^{a_0} ⋯ x_{n-1}^{a_{n-1}} and x_i = Σ_j ρ_n(S_eij), then has to
    hit every matrix-unit tuple with indices ≤ ``max_index``.
    """
    from mpkcheck.core.presentations.maps import build_map

    rho = build_map("rho", n)
    graph = rho.domain.graph
    report = ReportBuilder("compacts_in_image", n=n, max_index=max_index)
    _describe(rho, report)

    E = rho(P(n))
    report.expect("ρ(P_vn) ≠ 0", not E.is_zero, image=E)
    for k in range(n):
        report.expect(f"ρ(P_vn) has vanishing symbol in slot {k}", symbol_vanishes_at(E, k), image=E)

    x = []
    for i in range(n):
        xi = zero_of(rho.target)
        for e in graph.edges_from(i):
            xi = xi + rho(S(*e))
        x.append(xi)

    exponents = list(itertools.product(range(max_index + 1), repeat=n))
    left: Dict[Tuple[int, ...], TensorElement] = {}
    for a in exponents:
        m = one_of(rho.target)
        for i, power in enumerate(a):
            for _ in range(power):
                m = m * x[i]
        left[a] = m * E

    found: Dict[Tuple[Tuple[int, int], ...], str] = {}
    for a, b in itertools.product(exponents, repeat=2):
        m = left[a] * left[b].adjoint()
        if len(m) != 1:
            continue
        ((key, coeff),) = m.items()
        if coeff == 1 and all(sym.kind == UNIT for sym in key):
            found.setdefault(tuple((sym.a, sym.b) for sym in key), f"X{a} ρ(P_v{n}) X{b}*")

    for target in itertools.product(itertools.product(range(max_index + 1), repeat=2), repeat=n):
        label = " ⊗ ".join(f"e{i}{j}" for i, j in target)
        report.expect(f"{label} in the image of ρ_{n}", target in found, tuple=label)
    report.meta(
        monomials_searched=len(exponents) ** 2,
        matrix_units_found=len(found),
        sample_preimages={" ⊗ ".join(f"e{i}{j}" for i, j in k): v for k, v in list(found.items())[:3]},
    )
    return report.build()


def corner_unitary(n: int) -> VerificationReport:
    """
    U = s_n ∏_{k<n}(1 - s_k s_k*) in C(S^{2n+1}_H).

    U*U = UU* = Q with Q = ∏_{k<n}(1 - s_k s_k*), so U is a unitary of the
    corner Q C(S^{2n+1}_H) Q; W = U + 1 - Q is a unitary of the whole
    algebra. Both are images under ω_n: U = ω_n(S_enn), W = ω_n(S_enn + 1 - S_enn S_enn*).
    """
    from mpkcheck.core.presentations.maps import build_map

    sig = Signature.sphere(n + 1)
    report = ReportBuilder("corner_unitary", n=n)
    s_n = generator(sig, n)
    one = TensorElement.one(sig)
    Q = _defect_product(sig, range(n))
    U_ = s_n * Q
    W = U_ + one - Q

    report.expect_equal("Q* = Q", Q.adjoint(), Q)
    report.expect_equal("Q² = Q", Q * Q, Q)
    report.expect_equal("U*U = Q", U_.adjoint() * U_, Q)
    report.expect_equal("UU* = Q", U_ * U_.adjoint(), Q)
    report.expect_equal("W*W = 1", W.adjoint() * W, one)
    report.expect_equal("WW* = 1", W * W.adjoint(), one)

    omega = build_map("omega", n)
    s_free = FreeElement.gen(omega.domain, S(n, n))
    report.expect_equal("ω(S_enn) = U", omega(s_free), U_)
    report.expect_equal("ω(S_enn + 1 - S_enn S_enn*) = W",
                        omega(s_free + s_free.one_like() - s_free * s_free.adjoint()), W)

    u_is_unitary = (U_.adjoint() * U_ == one)
    report.meta(u_star_u_is_one=u_is_unitary, U=U_, W=W)
    if not u_is_unitary:
        report.note("U is only a corner unitary (U*U = UU* = Q ≠ 1); the unitary of the algebra is W = U + 1 - Q")
    return report.build()


def equivariance_check(assignment: GenAssignment, expect: bool = True,
                       check: str = "equivariance", **params: Any) -> VerificationReport:
    """
    Gauge equivariance: every generator image is homogeneous of the generator's degree.

    P_v has degree 0; S_e, t, s and u have degree 1. The report passes when the
    outcome matches ``expect``.
    """
    _require_complete(assignment)
    report = ReportBuilder(check, map=assignment.name, expected=expect, **params)
    _describe(assignment, report)
    offending = []
    for g in assignment.generators():
        image = assignment.image(g)
        deg = 0 if g.kind == "P" else 1
        if not (image.is_zero or image.is_homogeneous(deg)):
            offending.append({"generator": str(g), "image": str(image),
                              "degrees": sorted(image.degree_split())})
    equivariant = not offending
    report.meta(equivariant=equivariant)
    report.expect(
        "equivariant" if expect else "not equivariant",
        equivariant == expect,
        offending=offending[:3],
    )
    return report.build()
