"""
Deliberately broken inputs that the checks must catch.

Every fault check is expected to fail; a passing fault check means the
corresponding detector is blind.
"""

import logging
from dataclasses import replace
from fractions import Fraction

from mpkcheck.core.algebra.matrix import AlgMatrix
from mpkcheck.core.algebra.multipullback import multipullback_check, multipullback_tuple, perturb
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator
from mpkcheck.core.algebra.toeplitz import Shift, Unit, mul_symbols_dropping_telescope
from mpkcheck.core.ktheory.ledger import witness_u
from mpkcheck.core.numeric.backend import TruncationSpec, cross_validate_identity, cross_validate_mul
from mpkcheck.core.presentations.checks import ck_check, injectivity_sample
from mpkcheck.core.presentations.free import P, S
from mpkcheck.core.presentations.graphs import graph_gamma
from mpkcheck.core.presentations.maps import build_map
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import SuiteConfig, VerificationReport

logger = logging.getLogger(__name__)

PERTURBATION = Fraction(1, 10**6)


def _spec(config: SuiteConfig) -> TruncationSpec:
    return TruncationSpec.seeded(config.truncation_N, config.circle_points, config.margin, config.seed)


def fault_dropped_telescoping(config: SuiteConfig) -> VerificationReport:
    """t²·t* computed without the telescoping correction, against matrix products."""
    sig = Signature.toeplitz(1)
    a = TensorElement.from_slots(sig, {0: Shift(2)})
    b = TensorElement.from_slots(sig, {0: Shift(-1)})
    return cross_validate_mul(a, b, _spec(config), config.tolerance,
                              product=mul_symbols_dropping_telescope, check="fault_dropped_telescoping")


def fault_sink_handling(config: SuiteConfig, n: int = 2) -> VerificationReport:
    """Imposes the Cuntz-Krieger sum relation at the sink v_n of Γⁿ, where it must not hold."""
    rho = build_map("rho", n)
    graph = graph_gamma(n)
    report = ReportBuilder("fault_sink_handling", n=n)
    for v in sorted(graph.sinks):
        outgoing = rho(P(v)).zero_like()
        for e in graph.edges_from(v):
            x = rho(S(*e))
            outgoing = outgoing + x * x.adjoint()
        report.expect(f"Σ_(s(e)=v{v}) S_e S_e* = P_v{v}", outgoing == rho(P(v)),
                      vertex=v, lhs=outgoing, rhs=rho(P(v)))
    return report.build()


def fault_perturbed_identity(config: SuiteConfig, k: int = 1) -> VerificationReport:
    """u_k² against the identity plus 1e-6·e00⊗I, numerically."""
    u = witness_u(k)
    sig = u.signature
    bump = TensorElement.from_slots(sig, {0: Unit(0, 0)}, PERTURBATION)
    rhs = AlgMatrix.identity(sig, 2) + AlgMatrix.diagonal([bump, bump.zero_like()])
    return cross_validate_identity([u, u], rhs, _spec(config), config.tolerance,
                                   check="fault_perturbed_identity", k=k)


def fault_literal_eq_ss(config: SuiteConfig) -> VerificationReport:
    """The literal image 1 - t* of P_v1 is not a projection."""
    literal = build_map("toeplitz_graph_literal", 1, validate=False)
    return ck_check(graph_gamma(1), literal, check="fault_literal_eq_ss")


def fault_noninjective(config: SuiteConfig) -> VerificationReport:
    """S_e01 sent to the image of S_e00; the sampler must find S_e00 - S_e01 in the kernel."""
    base = build_map("toeplitz_graph", 1)
    images = dict(base.images)
    images[S(0, 1)] = images[S(0, 0)]
    broken = replace(base, name="eq:Ss(collapsed)", images=images, notes=())
    return injectivity_sample(broken, samples=min(config.injectivity_samples, 20) or 1, seed=config.seed,
                              check="fault_noninjective")


def fault_multipullback(config: SuiteConfig, n: int = 1) -> VerificationReport:
    """δ-image tuple of s_0 with +u added to its first component."""
    sig = Signature.sphere(n + 1)
    elements = perturb(multipullback_tuple(generator(sig, 0)), 0)
    return multipullback_check(elements, check="fault_multipullback")
