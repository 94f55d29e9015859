from fractions import Fraction

import numpy as np
import pytest

from mpkcheck.core.algebra.matrix import AlgMatrix
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement, generator
from mpkcheck.core.algebra.toeplitz import Circle, Shift, Unit, mul_symbols_dropping_telescope, proj_P, proj_Pperp
from mpkcheck.core.ktheory.ledger import witness_u
from mpkcheck.core.numeric.backend import (
    TruncationSpec,
    circle_samples,
    cross_validate_identity,
    cross_validate_mul,
    dump_coo,
    reach,
    to_matrix,
    window_indices,
)
from mpkcheck.utils.error import InvalidTruncation, SphereBlockNotLifted

T1 = Signature.toeplitz(1)
T2 = Signature.toeplitz(2)


def shift(k, sig=T1):
    return TensorElement.from_slots(sig, {0: Shift(k)})


class TestMatrices:
    def test_shift_is_subdiagonal(self):
        rep = to_matrix(shift(1), TruncationSpec(N=4))
        assert rep.shape == (4, 4)
        assert np.array_equal(rep.matrix.toarray(), np.eye(4, k=-1))

    def test_unit_tensor_identity(self):
        x = TensorElement(T2, {(Unit(0, 0), Shift(0)): 1})
        rep = to_matrix(x, TruncationSpec(N=3))
        e00 = np.zeros((3, 3))
        e00[0, 0] = 1
        assert np.array_equal(rep.matrix.toarray(), np.kron(e00, np.eye(3)))
        assert rep.toeplitz_slots == 2

    def test_circle_slot_is_a_scalar(self):
        sig = T1 + Signature.circle()
        x = TensorElement(sig, {(Shift(0), Circle(1)): 1})
        rep = to_matrix(x, TruncationSpec(N=3, circle_points=(1j,)))
        assert np.allclose(rep.matrix.toarray(), 1j * np.eye(3))

    def test_units_beyond_truncation_vanish(self):
        x = TensorElement.from_toeplitz(T1, 0, proj_P(6))
        rep = to_matrix(x, TruncationSpec(N=4))
        assert np.array_equal(rep.matrix.toarray(), np.eye(4))

    def test_projection_is_hermitian(self):
        rep = to_matrix(TensorElement.from_toeplitz(T1, 0, proj_P(2)), TruncationSpec(N=6))
        assert rep.is_hermitian(window_indices(1, 6, 6))

    def test_sphere_block_must_be_lifted(self):
        with pytest.raises(SphereBlockNotLifted):
            to_matrix(generator(Signature.sphere(2), 0), TruncationSpec(N=4))

    def test_dump(self):
        assert dump_coo(to_matrix(shift(1), TruncationSpec(N=3))) == "1 0 1.0 0.0\n2 1 1.0 0.0"


class TestTruncationSpec:
    @pytest.mark.parametrize("kwargs", [
        {"N": 3, "margin": 1},
        {"N": 8, "margin": -1},
        {"N": 8, "circle_points": ()},
        {"N": 8, "circle_points": (2 + 0j,)},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidTruncation):
            TruncationSpec(**kwargs)

    def test_seeded_points(self):
        a = TruncationSpec.seeded(8, points=3, seed=5)
        assert a == TruncationSpec.seeded(8, points=3, seed=5)
        assert a != TruncationSpec.seeded(8, points=3, seed=6)
        assert all(abs(abs(z) - 1) < 1e-14 for z in a.circle_points)
        assert a.to_json()["N"] == 8

    def test_circle_samples(self):
        spec = TruncationSpec(N=4, circle_points=(1 + 0j, -1 + 0j))
        assert circle_samples(T1, spec) == [()]
        assert circle_samples(Signature.parse("T,C"), spec) == [(1, ), (-1, )]
        assert circle_samples(Signature.parse("C,C"), spec) == [(1, -1), (-1, 1)]


class TestWindows:
    def test_indices(self):
        assert window_indices(2, 4, 2).tolist() == [0, 1, 4, 5]
        assert window_indices(0, 4, 3).tolist() == [0]
        assert window_indices(1, 4, 0).size == 0

    def test_reach(self):
        assert reach(shift(-3)) == 3
        assert reach(TensorElement.from_toeplitz(T1, 0, proj_P(2))) == 2
        assert reach(TensorElement.one(T2)) == 0
        assert reach(witness_u(1)) == 1


class TestCrossValidation:
    def test_shift_product(self):
        report = cross_validate_mul(shift(2), shift(-1), TruncationSpec(N=8))
        assert report.status == "pass", report.witness
        assert report.metadata["D"] == 3
        assert report.metadata["max_difference"] <= 1e-12

    def test_dropped_telescope_is_detected(self):
        report = cross_validate_mul(shift(2), shift(-1), TruncationSpec(N=8),
                                    product=mul_symbols_dropping_telescope)
        assert report.status == "fail"
        assert report.witness["max_difference"] == pytest.approx(1.0)

    def test_projection_squares_to_itself(self):
        p = TensorElement.from_toeplitz(T1, 0, proj_Pperp(2))
        assert cross_validate_mul(p, p, TruncationSpec(N=10)).status == "pass"
        assert cross_validate_identity([p, p], p, TruncationSpec(N=10)).status == "pass"

    def test_two_slot_product(self):
        x = TensorElement.from_slots(T2, {0: Shift(1), 1: Shift(-2)})
        y = TensorElement(T2, {(Shift(-1), Unit(1, 0)): 1, (Shift(0), Shift(2)): Fraction(1, 2)})
        assert cross_validate_mul(x, y, TruncationSpec(N=9)).status == "pass"

    def test_circle_samples_all_checked(self):
        sig = T1 + Signature.circle()
        x = TensorElement(sig, {(Shift(1), Circle(1)): 1, (Unit(0, 0), Circle(-2)): 2})
        report = cross_validate_mul(x, x.adjoint(), TruncationSpec.seeded(8, points=3))
        assert report.status == "pass", report.witness
        assert report.metadata["relations_checked"] == 3

    def test_witness_unitary_squares_to_one(self):
        u = witness_u(1)
        report = cross_validate_identity([u, u], AlgMatrix.identity(T2, 2), TruncationSpec(N=10))
        assert report.status == "pass", report.witness

    def test_perturbed_side_is_flagged(self):
        u = witness_u(1)
        one, zero = TensorElement.one(T2), TensorElement.zero(T2)
        bump = TensorElement(T2, {(Unit(0, 0), Shift(0)): Fraction(1, 10 ** 6)})
        rhs = AlgMatrix.from_rows([[one + bump, zero], [zero, one]])
        report = cross_validate_identity([u, u], rhs, TruncationSpec(N=10))
        assert report.status == "fail"
        assert report.witness["max_difference"] == pytest.approx(1e-6)

    def test_empty_window_is_skipped(self):
        report = cross_validate_mul(shift(3), shift(3), TruncationSpec(N=4))
        assert report.status == "skipped"
        assert report.metadata["window_size"] == 0
