"""
Catalogue of suite checks.

A ``CheckSpec`` turns a ``SuiteConfig`` into ``Task``s, one per parameter
point; each task produces a single ``VerificationReport``. Task parameters
mirror the report parameters so a crashing task can still be reported at
the right place.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional

import numpy as np

from mpkcheck.core.algebra.laws import random_element, tensor_laws, toeplitz_laws
from mpkcheck.core.algebra.matrix import AlgMatrix, boxplus, scalar_matrix
from mpkcheck.core.algebra.multipullback import multipullback_check, multipullback_tuple
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator
from mpkcheck.core.algebra.toeplitz import ToeplitzElement, proj_Pperp
from mpkcheck.core.ktheory import ledger
from mpkcheck.core.numeric.backend import TruncationSpec, cross_validate_identity, cross_validate_mul
from mpkcheck.core.presentations import checks, diagrams
from mpkcheck.core.presentations.assignment import compose
from mpkcheck.core.presentations.free import P, S
from mpkcheck.core.presentations.graphs import graph_gamma
from mpkcheck.core.presentations.maps import build_map
from mpkcheck.schemas.models import SuiteConfig, VerificationReport
from mpkcheck.services import faults

logger = logging.getLogger(__name__)

LK_N_MAX = 6
KVEC_K_MAX = 10
NUMERIC_SIGNATURES = (
    Signature.toeplitz(1),
    Signature.toeplitz(2),
    Signature.toeplitz(1) + Signature.circle(),
)

# smallest n each named map accepts; None means the map has no index
MAP_MIN_N: Dict[str, Optional[int]] = {
    "sigma": 0, "rho": 1, "omega": 0, "del": 1, "r": 1, "p1": 1, "p2": 1,
    "pi1": 1, "pi2": 1, "delta": 0, "delta_q": 0, "circle": None, "toeplitz_graph": None,
}
EQUIVARIANT_MAPS = ("sigma", "rho", "omega", "del", "p1", "p2")


@dataclass(frozen=True)
class Task:
    check: str
    params: Dict[str, Any]
    run: Callable[[], VerificationReport]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    summary: str
    plan: Callable[[SuiteConfig], Iterator[Task]]
    fault: bool = False
    aliases: tuple = field(default=())

    def tasks(self, config: SuiteConfig) -> List[Task]:
        return list(self.plan(config))

    def reports_as(self, check: str) -> bool:
        return check == self.name or check in self.aliases


def _task(check: str, run: Callable[..., VerificationReport], **params: Any) -> Task:
    return Task(check, params, lambda: run(**params))


def _spec(config: SuiteConfig) -> TruncationSpec:
    return TruncationSpec.seeded(config.truncation_N, config.circle_points, config.margin, config.seed)


def _map_points(config: SuiteConfig, name: str) -> List[Optional[int]]:
    low = MAP_MIN_N[name]
    return [None] if low is None else list(range(low, config.n_max + 1))


# ───────── algebra layers ─────────
def plan_toeplitz_laws(config: SuiteConfig) -> Iterator[Task]:
    yield _task("toeplitz_laws", toeplitz_laws, k_max=32)


def plan_tensor_laws(config: SuiteConfig) -> Iterator[Task]:
    for n in range(1, min(config.n_max, 2) + 1):
        yield _task("tensor_laws", tensor_laws, n=n, pairs=100, seed=config.seed)


def plan_sphere_relations(config: SuiteConfig) -> Iterator[Task]:
    for n in range(config.n_max + 1):
        yield _task("sphere_relations", checks.sphere_relations, n=n)


def _multipullback_element(n: int, element: str) -> VerificationReport:
    sig = Signature.sphere(n + 1)
    if element == "1":
        x = TensorElement.one(sig)
    elif element == "s_0 s_n*":
        x = generator(sig, 0) * generator(sig, n).adjoint()
    else:
        x = generator(sig, int(element[2:]))
    return multipullback_check(multipullback_tuple(x), element=element)


def plan_multipullback(config: SuiteConfig) -> Iterator[Task]:
    for n in range(1, config.n_max + 1):
        for element in ["1", "s_0 s_n*"] + [f"s_{i}" for i in range(n + 1)]:
            yield Task("multipullback", {"n": n, "element": element},
                       lambda n=n, element=element: _multipullback_element(n, element))


# ───────── presentations ─────────
def _relations(name: str, n: Optional[int]) -> VerificationReport:
    assignment = build_map(name, n or 1, validate=False)
    return checks.relation_report(assignment, n=n)


def plan_relations(config: SuiteConfig) -> Iterator[Task]:
    for name in MAP_MIN_N:
        for n in _map_points(config, name):
            yield Task("relations", {"map": name, "n": n}, lambda name=name, n=n: _relations(name, n))


def _ck(name: str, n: Optional[int]) -> VerificationReport:
    assignment = build_map(name, n or 1, validate=False)
    return checks.ck_check(assignment.domain.graph, assignment, n=n)


def plan_ck_relations(config: SuiteConfig) -> Iterator[Task]:
    yield Task("ck_relations", {"map": "toeplitz_graph", "n": None}, lambda: _ck("toeplitz_graph", None))
    for name in ("rho", "omega"):
        for n in range(1, config.n_max + 1):
            yield Task("ck_relations", {"map": name, "n": n}, lambda name=name, n=n: _ck(name, n))


def _diagram(name: str, n: int) -> VerificationReport:
    if name == "ballpullback":
        return diagrams.ballpullback_report(n)
    return diagrams.check_diagram(diagrams.DIAGRAMS[name](n), check=name, n=n)


def _diagram_plan(name: str) -> Callable[[SuiteConfig], Iterator[Task]]:
    def plan(config: SuiteConfig) -> Iterator[Task]:
        for n in range(1, config.n_max + 1):
            yield Task(name, {"n": n}, lambda n=n: _diagram(name, n))

    return plan


def _mpull_t(n: int, k: int) -> VerificationReport:
    return diagrams.check_diagram(diagrams.mpull_t(n, k), check="mpull_t", n=n, k=k)


def plan_mpull_t(config: SuiteConfig) -> Iterator[Task]:
    for n in range(1, config.n_max + 1):
        for k in (0, 1):
            yield _task("mpull_t", _mpull_t, n=n, k=k)


def _injectivity(name: str, n: Optional[int], samples: int, seed: int) -> VerificationReport:
    return checks.injectivity_sample(build_map(name, n or 1), samples=samples, seed=seed, n=n)


def plan_injectivity(config: SuiteConfig) -> Iterator[Task]:
    points = [("toeplitz_graph", None)]
    points += [(name, n) for name in ("rho", "omega") for n in range(1, config.n_max + 1)]
    points += [("delta", n) for n in range(1, min(config.n_max, 2) + 1)]
    for name, n in points:
        yield Task("injectivity", {"map": name, "n": n, "samples": config.injectivity_samples, "seed": config.seed},
                   lambda name=name, n=n: _injectivity(name, n, config.injectivity_samples, config.seed))


def _equivariance(name: str, n: int) -> VerificationReport:
    if name == "del∘r":
        assignment = compose(build_map("del", n), build_map("r", n), name=f"∂_{n}∘r_{n}")
        return checks.equivariance_check(assignment, expect=True, n=n)
    return checks.equivariance_check(build_map(name, n), expect=(name != "r"), n=n)


def plan_equivariance(config: SuiteConfig) -> Iterator[Task]:
    for n in range(1, config.n_max + 1):
        for name in EQUIVARIANT_MAPS + ("r", "del∘r"):
            yield Task("equivariance", {"map": name, "n": n}, lambda name=name, n=n: _equivariance(name, n))


def _per_n(check: str, fn: Callable[[int], VerificationReport], low: int = 1) -> Callable[[SuiteConfig], Iterator[Task]]:
    def plan(config: SuiteConfig) -> Iterator[Task]:
        for n in range(low, config.n_max + 1):
            yield Task(check, {"n": n}, lambda n=n: fn(n))

    return plan


# ───────── K-theory ledger ─────────
def plan_ekk(config: SuiteConfig) -> Iterator[Task]:
    for k in range(config.k_max + 2):
        yield _task("ekk", ledger.verify_ekk, k=k)


def plan_proj_e(config: SuiteConfig) -> Iterator[Task]:
    for n in range(config.n_max + 1):
        for k in range(config.k_max + 1):
            yield _task("proj_E", ledger.proj_e_report, n=n, k=k)


def plan_recursion_symbolic(config: SuiteConfig) -> Iterator[Task]:
    for n in range(config.n_max + 1):
        for j in range(n + 1):
            for k in range(config.k_max + 1):
                yield _task("kvec_recursion_symbolic", ledger.verify_recursion, n=n, j=j, k=k)


def plan_kvec_recursion(config: SuiteConfig) -> Iterator[Task]:
    k_max = max(KVEC_K_MAX, config.k_max)
    for n in range(config.ledger_bound + 1):
        yield _task("kvec_recursion", ledger.kvec_recursion, n=n, k_max=k_max)


def plan_atiyah_todd(config: SuiteConfig) -> Iterator[Task]:
    for n in range(config.ledger_bound + 1):
        yield Task("atiyah_todd_first", {"n": n}, lambda n=n: ledger.at_first(n))
        yield Task("atiyah_todd_second", {"n": n}, lambda n=n: ledger.at_second(n))


def _ledger_plan(check: str, fn: Callable[[int], VerificationReport],
                 bound: Callable[[SuiteConfig], int], low: int = 0) -> Callable[[SuiteConfig], Iterator[Task]]:
    def plan(config: SuiteConfig) -> Iterator[Task]:
        for n in range(low, bound(config) + 1):
            yield Task(check, {"n": n}, lambda n=n: fn(n))

    return plan


def plan_alt_binom(config: SuiteConfig) -> Iterator[Task]:
    for m in range(1, config.binom_m_max + 1):
        yield _task("alt_binom", ledger.alt_binom_vanish, m=m)


# ───────── numeric shadows ─────────
def _numeric_pair(index: int, config: SuiteConfig) -> VerificationReport:
    rng = np.random.default_rng([config.seed, index])
    sig = NUMERIC_SIGNATURES[index % len(NUMERIC_SIGNATURES)]
    a, b = random_element(sig, rng), random_element(sig, rng)
    return cross_validate_mul(a, b, _spec(config), config.tolerance, pair=index, signature=sig.label)


def plan_numeric_mul(config: SuiteConfig) -> Iterator[Task]:
    for index in range(config.numeric_pairs):
        yield Task("numeric_mul", {"pair": index, "signature": NUMERIC_SIGNATURES[index % len(NUMERIC_SIGNATURES)].label},
                   lambda index=index: _numeric_pair(index, config))


def _u_squared(k: int, config: SuiteConfig) -> VerificationReport:
    u = ledger.witness_u(k)
    return cross_validate_identity([u, u], AlgMatrix.identity(u.signature, 2), _spec(config), config.tolerance,
                                   identity="u_k² = 1", k=k)


def _u_conjugation(k: int, config: SuiteConfig) -> VerificationReport:
    u = ledger.witness_u(k)
    sig = u.signature
    zero = AlgMatrix.zeros(sig, 1, 1)
    source = boxplus(scalar_matrix(sig, TensorElement.from_toeplitz(sig, 0, ToeplitzElement.unit(k, k))), zero)
    e00 = TensorElement.from_toeplitz(sig, 0, ToeplitzElement.unit(0, 0))
    target = boxplus(zero, scalar_matrix(sig, e00 * TensorElement.from_toeplitz(sig, 1, proj_Pperp(k))))
    return cross_validate_identity([u, source, u], target, _spec(config), config.tolerance,
                                   identity="u_k ((e_kk⊗I) ⊞ 0) u_k = 0 ⊞ (e00⊗P⊥_k)", k=k)


def _rho_range_relation(n: int, edge: tuple, config: SuiteConfig) -> VerificationReport:
    rho = build_map("rho", n)
    x = rho(S(*edge))
    return cross_validate_identity([x.adjoint(), x], rho(P(edge[1])), _spec(config), config.tolerance,
                                   identity="ρ(S_e)*ρ(S_e) = ρ(P_r(e))", n=n, edge=list(edge))


def _telescoping(config: SuiteConfig) -> VerificationReport:
    sig = Signature.toeplitz(1)
    t = generator(sig, 0)
    rhs = t.one_like() - TensorElement.from_toeplitz(sig, 0, ToeplitzElement.unit(0, 0))
    return cross_validate_identity([t, t.adjoint()], rhs, _spec(config), config.tolerance, identity="tt* = 1 - e00")


def plan_numeric_identity(config: SuiteConfig) -> Iterator[Task]:
    yield Task("numeric_identity", {"identity": "tt* = 1 - e00"}, lambda: _telescoping(config))
    for k in range(config.k_max + 2):
        yield Task("numeric_identity", {"identity": "u_k² = 1", "k": k}, lambda k=k: _u_squared(k, config))
        yield Task("numeric_identity", {"identity": "u_k ((e_kk⊗I) ⊞ 0) u_k = 0 ⊞ (e00⊗P⊥_k)", "k": k},
                   lambda k=k: _u_conjugation(k, config))
    n = min(config.n_max, 2)
    for edge in graph_gamma(n).sorted_edges:
        yield Task("numeric_identity", {"identity": "ρ(S_e)*ρ(S_e) = ρ(P_r(e))", "n": n, "edge": list(edge)},
                   lambda edge=edge: _rho_range_relation(n, edge, config))


def _fault(check: str, fn: Callable[[SuiteConfig], VerificationReport]) -> CheckSpec:
    def plan(config: SuiteConfig) -> Iterator[Task]:
        yield Task(check, {}, lambda: fn(config))

    return CheckSpec(check, (fn.__doc__ or "").strip().splitlines()[0], plan, fault=True)


REGISTRY: Dict[str, CheckSpec] = {spec.name: spec for spec in [
    CheckSpec("toeplitz_laws", "telescoping products, P_k / P⊥_k projection laws and splitting", plan_toeplitz_laws),
    CheckSpec("tensor_laws", "quotient soundness, gauge automorphism and grading on random pairs", plan_tensor_laws),
    CheckSpec("sphere_relations", "presentation of C(S^{2n+1}_H) in the representative model", plan_sphere_relations),
    CheckSpec("multipullback", "multipullback compatibility of sphere elements", plan_multipullback),
    CheckSpec("relations", "every named map respects the relations of its domain", plan_relations),
    CheckSpec("ck_relations", "Cuntz-Krieger relations for eq:Ss, ρ_n and ω_n", plan_ck_relations),
    CheckSpec("mpull", "pullback square of C(S^{2n+1}_H)", _diagram_plan("mpull")),
    CheckSpec("mpull_t", "the pullback square tensored with T^{⊗k}, k ∈ {0, 1}", plan_mpull_t),
    CheckSpec("ballpullback", "σ_{n-1}∘ρ_n = ω_{n-1}∘∂_n and vanishing on sink edges", _diagram_plan("ballpullback")),
    CheckSpec("vsspheres", "coaction square of the graph algebras", _diagram_plan("vsspheres")),
    CheckSpec("face1", "first face of the ω_n induction cube", _diagram_plan("face1")),
    CheckSpec("face2", "second face of the ω_n induction cube", _diagram_plan("face2")),
    CheckSpec("face3", "third face of the ω_n induction cube", _diagram_plan("face3")),
    CheckSpec("face4", "fourth face of the ω_n induction cube", _diagram_plan("face4")),
    CheckSpec("injectivity", "sampled search for kernel elements", plan_injectivity),
    CheckSpec("equivariance", "gauge equivariance of the named maps", plan_equivariance),
    CheckSpec("rho_range_identities", "range projections and row sums of ρ_n",
              _per_n("rho_range_identities", checks.rho_range_identities)),
    CheckSpec("compacts_in_image", "ρ_n(P_vn) is compact and matrix units lie in the image",
              _per_n("compacts_in_image", checks.compacts_in_image)),
    CheckSpec("corner_unitary", "U*U = UU* = Q and W = U + 1 - Q is unitary",
              _per_n("corner_unitary", checks.corner_unitary)),
    CheckSpec("ekk", "u_k is a self-adjoint unitary conjugating (e_kk⊗I) ⊞ 0 to 0 ⊞ (e00⊗P⊥_k)", plan_ekk),
    CheckSpec("proj_E", "E_k^j are gauge invariant projections", plan_proj_e),
    CheckSpec("kvec_recursion_symbolic", "splitting and conjugation behind [E_{k+1}^j] = [E_k^j] - [E_k^{j+1}]",
              plan_recursion_symbolic),
    CheckSpec("kvec_recursion", "closed form of [E_k^j] satisfies the recursion", plan_kvec_recursion),
    CheckSpec("atiyah_todd", "both Atiyah-Todd identities in K₀", plan_atiyah_todd,
              aliases=("atiyah_todd_first", "atiyah_todd_second")),
    CheckSpec("basis_change", "the [L_k] form a ℤ-basis",
              _ledger_plan("basis_change", ledger.basis_change_unimodular, lambda c: c.ledger_bound)),
    CheckSpec("lk_expansion", "[L_k] expanded through every intermediate l",
              _ledger_plan("lk_expansion", ledger.lk_expansion_all, lambda c: min(c.ledger_bound, LK_N_MAX))),
    CheckSpec("comb_fj", "f_j(1) = j!(n-j)!/(n+1)! by two exact oracles",
              _ledger_plan("comb_fj", ledger.comb_fj_report, lambda c: c.comb_n_max)),
    CheckSpec("alt_binom", "alternating binomial sums vanish", plan_alt_binom),
    CheckSpec("classical_oracle", "classical identities in ℤ[x]/(x^{n+1}) and the sign twist",
              _ledger_plan("classical_oracle", ledger.classical_oracle, lambda c: c.ledger_bound)),
    CheckSpec("numeric_mul", "seeded symbolic products against truncated matrices", plan_numeric_mul),
    CheckSpec("numeric_identity", "numeric shadows of the symbolic identities", plan_numeric_identity),
    _fault("fault_dropped_telescoping", faults.fault_dropped_telescoping),
    _fault("fault_sink_handling", faults.fault_sink_handling),
    _fault("fault_perturbed_identity", faults.fault_perturbed_identity),
    _fault("fault_literal_eq_ss", faults.fault_literal_eq_ss),
    _fault("fault_noninjective", faults.fault_noninjective),
    _fault("fault_multipullback", faults.fault_multipullback),
]}


def check_names(include_faults: bool = True) -> List[str]:
    return sorted(name for name, spec in REGISTRY.items() if include_faults or not spec.fault)


def owner_of(check: str) -> Optional[CheckSpec]:
    """The CheckSpec whose tasks report under ``check``."""
    for spec in REGISTRY.values():
        if spec.reports_as(check):
            return spec
    return None
