"""
The commuting squares behind the pullback descriptions of quantum spheres.

Each builder returns the four maps (top, right, left, bottom) of a square
read as right∘top = bottom∘left; ``check_diagram`` runs ``square_commutes``
on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.presentations.assignment import (
    GaugeMove,
    GenAssignment,
    compose,
    tensor_identity,
    with_unit_factor,
)
from mpkcheck.core.presentations.checks import square_commutes
from mpkcheck.core.presentations.free import S
from mpkcheck.core.presentations.maps import build_map
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import VerificationReport
from mpkcheck.utils.error import UnsupportedIndex


@dataclass(frozen=True)
class Square:
    name: str
    top: GenAssignment
    right: GenAssignment
    left: GenAssignment
    bottom: GenAssignment


def _gauged(assignment: GenAssignment, slot: int) -> GenAssignment:
    """φ∘assignment with φ moving the total degree onto ``slot``."""
    return compose(GaugeMove(assignment.target, slot), assignment, name=f"φ∘{assignment.name}")


def _need(n: int, minimum: int, name: str) -> None:
    if n < minimum:
        raise UnsupportedIndex(f"diagram '{name}' needs n >= {minimum}, got {n}",
                               details={"diagram": name, "n": n})


def mpull(n: int) -> Square:
    """C(S^{2n+1}_H) as the pullback of C(S^{2n-1}_H)⊗T and T^{⊗n}⊗C(S¹)."""
    _need(n, 1, "mpull")
    return Square("eq:Mpull", build_map("p2", n), build_map("pi2", n), build_map("p1", n), build_map("pi1", n))


def mpull_t(n: int, k: int) -> Square:
    """The same square tensored with T^{⊗k}, gauged on the circle slot."""
    _need(n, 1, "mpull_t")
    extra = Signature.toeplitz(k)
    p1 = tensor_identity(build_map("p1", n), extra) if k else build_map("p1", n)
    p2 = tensor_identity(build_map("p2", n), extra) if k else build_map("p2", n)
    pi1 = tensor_identity(build_map("pi1", n), extra) if k else build_map("pi1", n)
    pi2 = tensor_identity(build_map("pi2", n), extra) if k else build_map("pi2", n)
    return Square(f"eq:MpullT(k={k})", _gauged(p2, n), pi2, p1, _gauged(pi1, n))


def ballpullback(n: int) -> Square:
    """σ_{n-1}∘ρ_n = ω_{n-1}∘∂_n on C(Γⁿ)."""
    _need(n, 1, "ballpullback")
    return Square("ballpullback", build_map("rho", n), build_map("sigma", n - 1),
                  build_map("del", n), build_map("omega", n - 1))


def vsspheres(n: int) -> Square:
    """(∂_n⊗id)∘(r_n⊗id)∘δ = δ∘∂_n∘r_n on C(Σⁿ)."""
    _need(n, 1, "vsspheres")
    r, d = build_map("r", n), build_map("del", n)
    top = compose(tensor_identity(r), build_map("delta_q", n))
    left = compose(d, r)
    return Square("VSspheresPB", top, tensor_identity(d), left, build_map("delta_q", n - 1))


def face1(n: int) -> Square:
    """φ∘p2∘ω_n = (ρ_n⊗id)∘(r_n⊗id)∘δ."""
    _need(n, 1, "face1")
    left = compose(tensor_identity(build_map("r", n)), build_map("delta_q", n))
    return Square("face1", build_map("omega", n), _gauged(build_map("p2", n), n),
                  left, tensor_identity(build_map("rho", n)))


def face2(n: int) -> Square:
    """p1∘ω_n = (ω_{n-1}⊗1)∘∂_n∘r_n."""
    _need(n, 1, "face2")
    left = compose(build_map("del", n), build_map("r", n))
    bottom = with_unit_factor(build_map("omega", n - 1), Signature.toeplitz(1))
    return Square("face2", build_map("omega", n), build_map("p1", n), left, bottom)


def face3(n: int) -> Square:
    """(σ_{n-1}⊗id)∘(ρ_n⊗id) = (ω_{n-1}⊗id)∘(∂_n⊗id) on C(Γⁿ)⊗C(S¹)."""
    _need(n, 1, "face3")
    return Square("face3", tensor_identity(build_map("rho", n)), tensor_identity(build_map("sigma", n - 1)),
                  tensor_identity(build_map("del", n)), tensor_identity(build_map("omega", n - 1)))


def face4(n: int) -> Square:
    """φ∘(id⊗σ)∘(ω_{n-1}⊗1) = (ω_{n-1}⊗id)∘δ on C(Σ^{n-1})."""
    _need(n, 1, "face4")
    top = with_unit_factor(build_map("omega", n - 1), Signature.toeplitz(1))
    return Square("face4", top, _gauged(build_map("pi1", n), n),
                  build_map("delta_q", n - 1), tensor_identity(build_map("omega", n - 1)))


DIAGRAMS: Dict[str, Callable[[int], Square]] = {
    "mpull": mpull,
    "ballpullback": ballpullback,
    "vsspheres": vsspheres,
    "face1": face1,
    "face2": face2,
    "face3": face3,
    "face4": face4,
}


def check_diagram(square: Square, check: str, extra=None, **params) -> VerificationReport:
    return square_commutes(square.top, square.right, square.left, square.bottom,
                           check=check, extra=extra, diagram=square.name, **params)


def ballpullback_report(n: int) -> VerificationReport:
    """The square plus σ_{n-1}(ρ_n(S_ein)) = 0 for every edge into the sink."""
    square = ballpullback(n)

    def sink_edges_vanish(report: ReportBuilder) -> None:
        for i in range(n):
            image = square.right(square.top(S(i, n)))
            report.expect(f"σ_{n - 1}(ρ_{n}(S_e{i}{n})) = 0", image.is_zero, image=image)

    return check_diagram(square, "ballpullback", extra=sink_edges_vanish, n=n)
