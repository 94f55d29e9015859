"""Seeded law checks for the Toeplitz and tensor layers."""

from __future__ import annotations

import numpy as np

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, gauge_move, tmul
from mpkcheck.core.algebra.toeplitz import (
    Circle, Shift, ToeplitzElement, Unit, is_projection, mul, proj_P, proj_Pperp,
)
from mpkcheck.core.reporting import ReportBuilder
from mpkcheck.schemas.models import VerificationReport


def random_element(sig: Signature, rng: np.random.Generator, terms: int = 3,
                   max_shift: int = 2, max_index: int = 2) -> TensorElement:
    """Small random element with integer coefficients in [-3, 3]."""
    out = TensorElement.zero(sig)
    for _ in range(terms):
        key = []
        for k in range(sig.slot_count):
            if sig.is_circle(k):
                key.append(Circle(int(rng.integers(-max_shift, max_shift + 1))))
            elif rng.random() < 0.5:
                key.append(Shift(int(rng.integers(-max_shift, max_shift + 1))))
            else:
                key.append(Unit(int(rng.integers(0, max_index + 1)), int(rng.integers(0, max_index + 1))))
        coeff = int(rng.integers(-3, 4)) or 1
        out = out + TensorElement(sig, {tuple(key): coeff})
    return out


def _ideal_noise(lifted: Signature, ranges, rng: np.random.Generator, max_index: int = 2) -> TensorElement:
    """A tuple that is all matrix units inside the first sphere block."""
    start, stop = ranges[0]
    key = []
    for k in range(lifted.slot_count):
        if lifted.is_circle(k):
            key.append(Circle(int(rng.integers(-2, 3))))
        elif start <= k < stop or rng.random() < 0.5:
            key.append(Unit(int(rng.integers(0, max_index + 1)), int(rng.integers(0, max_index + 1))))
        else:
            key.append(Shift(int(rng.integers(-2, 3))))
    return TensorElement(lifted, {tuple(key): int(rng.integers(1, 4))})


def toeplitz_laws(k_max: int = 32) -> VerificationReport:
    """Telescoping products, projection laws of P_k, P⊥_k and the orthogonal split P⊥_k = P⊥_{k+1} + e_kk."""
    report = ReportBuilder("toeplitz_laws", k_max=k_max)
    t, ts = ToeplitzElement.shift(1), ToeplitzElement.shift(-1)
    one = ToeplitzElement.one()
    report.expect_equal("t*t = 1", mul(ts, t), one)
    report.expect_equal("tt* = 1 - e00", mul(t, ts), one - ToeplitzElement.unit(0, 0))
    report.expect_equal("t² t* = t - e10", mul(ToeplitzElement.shift(2), ts),
                        t - ToeplitzElement.unit(1, 0))
    report.expect("symbol(tt*) = 1", mul(t, ts).symbol() == one.symbol(), symbol=str(mul(t, ts).symbol()))
    for k in range(k_max + 1):
        p, q = proj_P(k), proj_Pperp(k)
        report.expect(f"P_{k} is a projection", is_projection(p), element=str(p))
        report.expect(f"P⊥_{k} is a projection", is_projection(q), element=str(q))
        report.expect_equal(f"P⊥_{k} = P⊥_{k + 1} + e_{k}{k}", q, proj_Pperp(k + 1) + ToeplitzElement.unit(k, k))
        report.expect(f"P⊥_{k} has symbol 1", q.symbol() == one.symbol(), symbol=str(q.symbol()))
    return report.build()


def tensor_laws(n: int = 2, pairs: int = 50, seed: int = 42) -> VerificationReport:
    """
    Quotient soundness, gauge invariance of products and grading additivity on
    random pairs in C(S^{2n+1}_H) ⊗ C(S¹).
    """
    report = ReportBuilder("tensor_laws", n=n, pairs=pairs, seed=seed)
    sig = Signature.sphere(n + 1) + Signature.circle()
    lifted = sig.lift()
    circle = sig.slot_count - 1
    rng = np.random.default_rng(seed)
    report.meta(signature=sig.label)
    for index in range(pairs):
        x, y = random_element(sig, rng), random_element(sig, rng)
        product = tmul(x, y)
        rx = x.lift() + _ideal_noise(lifted, sig.sphere_ranges, rng)
        ry = y.lift() + _ideal_noise(lifted, sig.sphere_ranges, rng)
        raw = tmul(rx, ry).reinterpret(sig)
        report.expect("product of representatives is the product of classes", raw == product,
                      pair=index, x=x, y=y, canonical=product, via_representatives=raw)
        report.expect(
            "gauge move preserves products",
            gauge_move(product, circle) == tmul(gauge_move(x, circle), gauge_move(y, circle)),
            pair=index, x=x, y=y,
        )
        report.expect("gauge move preserves adjoints",
                      gauge_move(x.adjoint(), circle) == gauge_move(x, circle).adjoint(), pair=index, x=x)
        report.expect("gauge move is invertible",
                      gauge_move(gauge_move(x, circle), circle, inverse=True) == x, pair=index, x=x)
        report.expect("(xy)* = y*x*", product.adjoint() == tmul(y.adjoint(), x.adjoint()), pair=index, x=x, y=y)
        for dx, px in x.degree_split().items():
            for dy, py in y.degree_split().items():
                pq = tmul(px, py)
                report.expect("degrees add under products", pq.is_homogeneous(dx + dy),
                              pair=index, degrees=[dx, dy], product=pq)
    return report.build()
