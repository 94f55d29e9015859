"""
K-theory ledger of the multipullback quantum projective spaces.

Projections E_k^j in C(S^{2n+1}_H), the unitary witnesses that relate
them, and integer-vector bookkeeping of their K₀-classes in the basis
[E₀⁰], …, [E₀ⁿ]. The basis is taken as given; the ledger verifies the
arithmetic of the line-bundle classes [L_k] and the Atiyah-Todd identities
in that basis, and the combinatorial facts the proof rests on.

Coordinates j+i > n that appear in closed forms are dropped: E₀^{n+1} = 0,
and beyond n+1 the drop is a convention.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

import sympy

from mpkcheck.core.algebra.matrix import AlgMatrix, boxplus, is_selfadjoint_unitary
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement
from mpkcheck.core.algebra.toeplitz import Shift, ToeplitzElement, proj_P, proj_Pperp
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import VerificationReport
from mpkcheck.utils.error import IndexOutOfRange

logger = logging.getLogger(__name__)

E00 = ToeplitzElement.unit(0, 0)


def _out_of_range(what: str, **values: int) -> IndexOutOfRange:
    shown = ", ".join(f"{k}={v}" for k, v in values.items())
    return IndexOutOfRange(f"{what} out of range ({shown})", details=dict(values))


# ───────── K₀ vectors ─────────
@dataclass(frozen=True)
class KVector:
    """Integer coordinates of a K₀-class in the basis [E₀⁰], …, [E₀ⁿ]."""

    n: int
    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.n + 1:
            raise ValueError(f"KVector for n={self.n} needs {self.n + 1} coordinates, got {len(self.coords)}")

    @classmethod
    def zero(cls, n: int) -> "KVector":
        return cls(n, (0,) * (n + 1))

    @classmethod
    def unit(cls, n: int, j: int) -> "KVector":
        """[E₀^j]; the zero vector for j > n."""
        return cls(n, tuple(1 if i == j else 0 for i in range(n + 1)))

    def _same_n(self, other: "KVector") -> None:
        if other.n != self.n:
            raise ValueError(f"KVectors of dimensions {self.n} and {other.n} do not mix")

    def __add__(self, other: "KVector") -> "KVector":
        self._same_n(other)
        return KVector(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "KVector") -> "KVector":
        self._same_n(other)
        return KVector(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "KVector":
        return KVector(self.n, tuple(-a for a in self.coords))

    def scale(self, factor: int) -> "KVector":
        return KVector(self.n, tuple(factor * a for a in self.coords))

    def to_json(self) -> List[int]:
        return list(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.coords) + ")"


def ksum(n: int, terms: Sequence[Tuple[int, KVector]]) -> KVector:
    out = KVector.zero(n)
    for c, v in terms:
        out = out + v.scale(c)
    return out


def kvec_E(n: int, j: int, k: int) -> KVector:
    """
    [E_k^j] = Σ_i (-1)^i C(k, i) [E₀^{j+i}].

    Terms with j + i > n are dropped: E₀^{n+1} = 0, and past n+1 the drop is
    a convention.
    """
    if n < 0 or not 0 <= j <= n + 1 or k < 0:
        raise _out_of_range("kvec_E index", n=n, j=j, k=k)
    return ksum(n, [((-1) ** i * comb(k, i), KVector.unit(n, j + i)) for i in range(k + 1)])


def kvec_L(n: int, k: int) -> KVector:
    """[L_k] for -1 ≤ k ≤ n+1; [L_{-1}] is represented by ⊞_j E₀^j."""
    if n < 0 or not -1 <= k <= n + 1:
        raise _out_of_range("kvec_L index", n=n, k=k)
    if k == -1:
        return KVector(n, (1,) * (n + 1))
    return kvec_E(n, 0, k)


# ───────── projections and witnesses ─────────
def _place(sig: Signature, factors: Dict[int, ToeplitzElement], *, canonical: bool = True) -> TensorElement:
    """Elementary tensor with the given Toeplitz factors and identities elsewhere."""
    lifted = sig.lift()
    out = TensorElement.one(lifted)
    for slot, x in sorted(factors.items()):
        out = out * TensorElement.from_toeplitz(lifted, slot, x)
    return out.reinterpret(sig, canonical=canonical) if sig != lifted else out


def proj_E(n: int, j: int, k: int) -> TensorElement:
    """
    E_k^j = [(⊗^j e₀₀) ⊗ P⊥_k ⊗ I ⊗ … ⊗ I] in C(S^{2n+1}_H); E_k^{n+1} = 0.

    Raises:
        IndexOutOfRange: unless 0 ≤ j ≤ n+1 and k ≥ 0
    """
    if n < 0 or not 0 <= j <= n + 1 or k < 0:
        raise _out_of_range("proj_E index", n=n, j=j, k=k)
    sig = Signature.sphere(n + 1)
    if j == n + 1:
        return TensorElement.zero(sig)
    factors = {i: E00 for i in range(j)}
    factors[j] = proj_Pperp(k)
    return _place(sig, factors)


def proj_M(n: int, j: int, k: int, *, lifted: bool = False) -> TensorElement:
    """(⊗^j e₀₀) ⊗ e_kk ⊗ I …, the difference E_k^j - E_{k+1}^j."""
    if n < 0 or not 0 <= j <= n or k < 0:
        raise _out_of_range("proj_M index", n=n, j=j, k=k)
    sig = Signature.sphere(n + 1)
    factors = {i: E00 for i in range(j)}
    factors[j] = ToeplitzElement.unit(k, k)
    return _place(sig.lift() if lifted else sig, factors)


def witness_u(k: int) -> AlgMatrix:
    """u_k = [[P_k⊗I, t^k⊗t*^k], [t*^k⊗t^k, I⊗P_k]] over T^{⊗2}."""
    if k < 0:
        raise _out_of_range("witness_u index", k=k)
    sig = Signature.toeplitz(2)
    return AlgMatrix.from_rows([
        [_place(sig, {0: proj_P(k)}), TensorElement.from_slots(sig, {0: Shift(k), 1: Shift(-k)})],
        [TensorElement.from_slots(sig, {0: Shift(-k), 1: Shift(k)}), _place(sig, {1: proj_P(k)})],
    ])


def verify_ekk(k: int) -> VerificationReport:
    """u_k is a self-adjoint unitary conjugating (e_kk⊗I) ⊞ 0 to 0 ⊞ (e₀₀⊗P⊥_k)."""
    report = ReportBuilder("ekk", k=k)
    sig = Signature.toeplitz(2)
    u = witness_u(k)
    identity = AlgMatrix.identity(sig, 2)
    zero = AlgMatrix.zeros(sig, 1, 1)
    source = boxplus(AlgMatrix(sig, ((_place(sig, {0: ToeplitzElement.unit(k, k)}),),)), zero)
    target = boxplus(zero, AlgMatrix(sig, ((_place(sig, {0: E00, 1: proj_Pperp(k)}),),)))

    report.expect_equal("u = u*", u.adjoint(), u)
    report.expect_equal("u² = 1", u * u, identity)
    report.expect_equal("u ((e_kk⊗I) ⊞ 0) u = 0 ⊞ (e00⊗P⊥_k)", u * source * u, target)
    report.meta(witness=u)
    return report.build()


def recursion_conjugator(n: int, j: int, k: int) -> AlgMatrix:
    """
    Q⊗u_k⊗I + (1-Q)⊗1₂ over T^{⊗(n+1)}, with Q = ⊗^j e₀₀ and u_k on slots j, j+1.

    A self-adjoint unitary before passing to the quotient.
    """
    if n < 1 or not 0 <= j < n or k < 0:
        raise _out_of_range("recursion conjugator index", n=n, j=j, k=k)
    lifted = Signature.toeplitz(n + 1)
    Q = _place(lifted, {i: E00 for i in range(j)})
    rest = Q.one_like() - Q

    def spread(x: TensorElement) -> TensorElement:
        """x on slots j, j+1 of T^{⊗(n+1)}."""
        out = TensorElement.zero(lifted)
        for (a, b), c in x.items():
            out = out + TensorElement.from_slots(lifted, {j: a, j + 1: b}, c)
        return out

    u = witness_u(k)
    rows = []
    for r in range(2):
        row = []
        for c in range(2):
            entry = Q * spread(u[r, c])
            if r == c:
                entry = entry + rest
            row.append(entry)
        rows.append(row)
    return AlgMatrix.from_rows(rows)


def verify_recursion(n: int, j: int, k: int) -> VerificationReport:
    """
    E_k^j = E_{k+1}^j + M with E_{k+1}^j M = 0, and M ⊞ 0 is unitarily
    equivalent to 0 ⊞ E_k^{j+1}; hence [E_{k+1}^j] = [E_k^j] - [E_k^{j+1}].
    """
    if n < 0 or not 0 <= j <= n or k < 0:
        raise _out_of_range("verify_recursion index", n=n, j=j, k=k)
    report = ReportBuilder("kvec_recursion_symbolic", n=n, j=j, k=k)
    sig = Signature.sphere(n + 1)
    e_k, e_k1 = proj_E(n, j, k), proj_E(n, j, k + 1)
    M = proj_M(n, j, k)

    report.expect_equal("E_k^j = E_{k+1}^j + M", e_k, e_k1 + M)
    report.expect("E_{k+1}^j M = 0", (e_k1 * M).is_zero, product=e_k1 * M)
    report.expect("M is a projection", M.adjoint() == M and M * M == M, M=M)

    if j == n:
        report.note("j = n: M vanishes in the quotient and E_k^n = E_{k+1}^n")
        report.expect("M = 0 for j = n", M.is_zero, M=M)
        return report.build()

    V = recursion_conjugator(n, j, k)
    lifted = sig.lift()
    zero_lifted = AlgMatrix.zeros(lifted, 1, 1)
    report.expect("conjugator is a self-adjoint unitary over T^{⊗(n+1)}", is_selfadjoint_unitary(V),
                  conjugator=V)
    source = boxplus(AlgMatrix(lifted, ((proj_M(n, j, k, lifted=True),),)), zero_lifted)
    conjugated = (V * source * V).map(lambda x: x.reinterpret(sig))
    zero = AlgMatrix.zeros(sig, 1, 1)
    target = boxplus(zero, AlgMatrix(sig, ((proj_E(n, j + 1, k),),)))
    report.expect_equal("V (M ⊞ 0) V = 0 ⊞ E_k^{j+1}", conjugated, target)
    return report.build()


def proj_e_report(n: int, k: int) -> VerificationReport:
    """Every E_k^j, 0 ≤ j ≤ n+1, is a gauge-invariant projection."""
    report = ReportBuilder("proj_E", n=n, k=k)
    for j in range(n + 2):
        e = proj_E(n, j, k)
        report.expect(f"E_{k}^{j} is a projection", e.adjoint() == e and e * e == e, element=e)
        report.expect(f"E_{k}^{j} has degree 0", e.is_homogeneous(0), element=e)
    report.expect_equal(f"E_{k}^{n} = E_0^{n}", proj_E(n, n, k), proj_E(n, n, 0))
    return report.build()


# ───────── integer ledger ─────────
def kvec_recursion(n: int, k_max: int) -> VerificationReport:
    """kvec_E(n, j, k+1) = kvec_E(n, j, k) - kvec_E(n, j+1, k) for j ≤ n, k ≤ k_max."""
    report = ReportBuilder("kvec_recursion", n=n, k_max=k_max)
    for j in range(n + 1):
        for k in range(k_max + 1):
            lhs = kvec_E(n, j, k + 1)
            rhs = kvec_E(n, j, k) - kvec_E(n, j + 1, k)
            report.expect_equal(f"[E_{k + 1}^{j}] = [E_{k}^{j}] - [E_{k}^{j + 1}]", lhs, rhs)
    return report.build()


def lk_expansion(n: int, k: int, l: int) -> VerificationReport:
    """[L_k] = Σ_{j≤l} (-1)^j C(l, j) [E_{k-l}^j]."""
    if not 0 <= l <= k <= n:
        raise _out_of_range("lk_expansion index", n=n, k=k, l=l)
    report = ReportBuilder("lk_expansion", n=n, k=k, l=l)
    rhs = ksum(n, [((-1) ** j * comb(l, j), kvec_E(n, j, k - l)) for j in range(l + 1)])
    report.expect_equal(f"[L_{k}] = Σ_(j≤{l}) (-1)^j C({l},j) [E_{k - l}^j]", kvec_L(n, k), rhs)
    return report.build()


def lk_expansion_all(n: int) -> VerificationReport:
    """The expansion for every 0 ≤ l ≤ k ≤ n."""
    report = ReportBuilder("lk_expansion", n=n)
    for k in range(n + 1):
        for l in range(k + 1):
            sub = lk_expansion(n, k, l)
            report.expect(f"expansion k={k}, l={l}", sub.passed, **(sub.witness or {}))
    return report.build()


def at_first(n: int) -> VerificationReport:
    """[L_{n+1}] = Σ_{k=0}^{n} (-1)^{n-k} C(n+1, k) [L_k]."""
    report = ReportBuilder("atiyah_todd_first", n=n)
    lhs = kvec_L(n, n + 1)
    rhs = ksum(n, [((-1) ** (n - k) * comb(n + 1, k), kvec_L(n, k)) for k in range(n + 1)])
    report.expect_equal(f"[L_{n + 1}] = Σ (-1)^(n-k) C(n+1,k) [L_k]", lhs, rhs)
    vanishing = ksum(n, [((-1) ** (n + 1 - k) * comb(n + 1, k), kvec_L(n, k)) for k in range(n + 2)])
    report.expect_equal("Σ_(k=0..n+1) (-1)^(n+1-k) C(n+1,k) [L_k] = 0", vanishing, KVector.zero(n))
    report.meta(lhs=lhs, rhs=rhs)
    return report.build()


def at_second(n: int) -> VerificationReport:
    """[L_{-1}] = Σ_{k=0}^{n} (-1)^k C(n+1, k+1) [L_k]."""
    report = ReportBuilder("atiyah_todd_second", n=n)
    lhs = kvec_L(n, -1)
    rhs = ksum(n, [((-1) ** k * comb(n + 1, k + 1), kvec_L(n, k)) for k in range(n + 1)])
    report.expect_equal("[L_-1] = Σ (-1)^k C(n+1,k+1) [L_k]", lhs, rhs)
    report.meta(lhs=lhs, rhs=rhs)
    return report.build()


def basis_change_matrix(n: int) -> sympy.Matrix:
    return sympy.Matrix([list(kvec_L(n, k).coords) for k in range(n + 1)])


def basis_change_unimodular(n: int) -> VerificationReport:
    """Rows [L_0], …, [L_n] form a lower-triangular matrix of determinant ±1."""
    report = ReportBuilder("basis_change", n=n)
    matrix = basis_change_matrix(n)
    upper = [(r, c) for r in range(n + 1) for c in range(r + 1, n + 1) if matrix[r, c] != 0]
    report.expect("lower triangular", not upper, nonzero_above_diagonal=upper[:5])
    det = int(matrix.det(method="bareiss"))
    report.expect("determinant is ±1", det in (1, -1), determinant=det)
    report.meta(determinant=det, diagonal=[int(matrix[i, i]) for i in range(n + 1)])
    return report.build()


# ───────── combinatorial oracle ─────────
def comb_fj(n: int, j: int) -> Fraction:
    """f_j(1) = Σ_{k=0}^{n-j} (-1)^k C(n-j, k) / (k+j+1)."""
    if not 0 <= j <= n:
        raise _out_of_range("comb_fj index", n=n, j=j)
    return sum((Fraction((-1) ** k * comb(n - j, k), k + j + 1) for k in range(n - j + 1)), Fraction(0))


def comb_fj_closed(n: int, j: int) -> Fraction:
    return Fraction(factorial(j) * factorial(n - j), factorial(n + 1))


_X = sympy.Symbol("x")


def comb_fj_antiderivative(n: int, j: int) -> Fraction:
    """
    f_j(1) through f_j' = (-1)^{n-j} x^j (x-1)^{n-j} and f_j(0) = 0.

    Also confirms that the term-wise polynomial f_j differentiates to that integrand.
    """
    if not 0 <= j <= n:
        raise _out_of_range("comb_fj index", n=n, j=j)
    integrand = sympy.expand((-1) ** (n - j) * _X ** j * (_X - 1) ** (n - j))
    f = sum(
        (sympy.Rational((-1) ** k * comb(n - j, k), k + j + 1) * _X ** (k + j + 1) for k in range(n - j + 1)),
        sympy.Integer(0),
    )
    if sympy.expand(sympy.diff(f, _X) - integrand) != 0:
        raise ArithmeticError(f"f_{j}' differs from its closed-form integrand for n={n}")
    value = sympy.integrate(integrand, (_X, 0, 1))
    return Fraction(int(value.p), int(value.q))


def comb_fj_report(n: int) -> VerificationReport:
    report = ReportBuilder("comb_fj", n=n)
    for j in range(n + 1):
        direct = comb_fj(n, j)
        closed = comb_fj_closed(n, j)
        report.expect_equal(f"f_{j}(1) = {j}!({n}-{j})!/({n}+1)!", direct, closed)
        report.expect_equal(f"(n+1)!/(j!(n-j)!) f_{j}(1) = 1", direct / closed, Fraction(1))
        report.expect_equal(f"antiderivative oracle for f_{j}(1)", comb_fj_antiderivative(n, j), direct)
    return report.build()


def alt_binom_vanish(m: int) -> VerificationReport:
    if m < 1:
        raise _out_of_range("alt_binom_vanish index", m=m)
    report = ReportBuilder("alt_binom", m=m)
    total = sum((-1) ** k * comb(m, k) for k in range(m + 1))
    report.expect("Σ (-1)^k C(m,k) = 0", total == 0, total=total)
    return report.build()


def _truncated_coefficients(expr, n: int) -> List[int]:
    poly = sympy.Poly(sympy.series(expr, _X, 0, n + 1).removeO(), _X)
    return [int(poly.coeff_monomial(_X ** d)) for d in range(n + 1)]


def _twisted(v: KVector) -> List[int]:
    """Image under [E₀^j] ↦ (-x)^j, as coefficients of 1, x, …, x^n."""
    return [(-1) ** j * c for j, c in enumerate(v.coords)]


def classical_oracle(n: int) -> VerificationReport:
    """
    The ledger against K⁰(CPⁿ) = ℤ[x]/(x^{n+1}) with L_k ↦ (1+x)^k.

    The sign twist [E₀^j] ↦ (-x)^j must carry [L_k] onto (1+x)^k for
    0 ≤ k ≤ n+1 and onto (1+x)^{-1} for k = -1; the classical Atiyah-Todd
    identities must hold modulo x^{n+1}.
    """
    report = ReportBuilder("classical_oracle", n=n)
    for k in range(-1, n + 2):
        expected = _truncated_coefficients((1 + _X) ** k, n)
        report.expect_equal(f"[L_{k}] ↦ (1+x)^{k}", _twisted(kvec_L(n, k)), expected)
    first = sum((sympy.Integer((-1) ** (n + 1 - k) * comb(n + 1, k)) * (1 + _X) ** k for k in range(n + 2)),
                sympy.Integer(0))
    report.expect_equal("Σ (-1)^(n+1-k) C(n+1,k) (1+x)^k ≡ 0", _truncated_coefficients(first, n), [0] * (n + 1))
    second = sum((sympy.Integer((-1) ** k * comb(n + 1, k + 1)) * (1 + _X) ** k for k in range(n + 1)),
                 sympy.Integer(0))
    report.expect_equal("Σ (-1)^k C(n+1,k+1) (1+x)^k ≡ (1+x)^-1",
                        _truncated_coefficients(second, n), _truncated_coefficients((1 + _X) ** -1, n))
    return report.build()
