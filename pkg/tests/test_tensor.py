import pytest
from hypothesis import given, settings

from mpkcheck.core.algebra.laws import tensor_laws
from mpkcheck.core.algebra.matrix import AlgMatrix, boxplus, is_projection, is_selfadjoint_unitary, mat_adjoint
from mpkcheck.core.algebra.multipullback import (
    component_signature,
    multipullback_check,
    multipullback_tuple,
    perturb,
)
from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import (
    TensorElement,
    apply_symbol_at,
    embed_generator,
    gauge_move,
    generator,
    in_ideal,
    invariant_part,
    product,
    tadd,
    tmul,
    tscale,
)
from mpkcheck.core.algebra.toeplitz import Circle, Shift, ToeplitzElement, Unit
from mpkcheck.core.ktheory.ledger import witness_u
from mpkcheck.utils.error import IncompatibleSlot, NotACircleSlot, ShapeMismatch, SignatureMismatch

from conftest import tensor_elements

TC = Signature.toeplitz(1) + Signature.circle()


def s(sig, i):
    return generator(sig, i)


class TestEmbedding:
    def test_toeplitz_generator(self):
        t1 = embed_generator(Signature.toeplitz(3), "shift", 1)
        assert t1.terms == {(Shift(0), Shift(1), Shift(0)): 1}

    def test_sphere_generator_survives(self, sphere2):
        s0 = embed_generator(sphere2, "shift", 0)
        assert not s0.is_zero
        assert s0.terms == {(Shift(1), Shift(0)): 1}

    def test_lift_replaces_sphere_blocks(self, sphere2):
        assert sphere2.lift() == Signature.toeplitz(2)
        assert (sphere2 + Signature.circle()).lift() == Signature.toeplitz(2) + Signature.circle()
        lifted = embed_generator(sphere2, "shift", 0).lift()
        assert lifted.signature == Signature.toeplitz(2)
        assert lifted.terms == {(Shift(1), Shift(0)): 1}

    def test_unit_in_circle_slot(self):
        with pytest.raises(IncompatibleSlot):
            embed_generator(TC, "unit", 1, 0, 0)

    def test_shift_in_circle_slot(self):
        with pytest.raises(IncompatibleSlot):
            embed_generator(TC, "shift", 1)

    def test_slot_out_of_range(self):
        with pytest.raises(IncompatibleSlot):
            embed_generator(TC, "shift", 5)

    def test_mixing_signatures(self, sphere2):
        with pytest.raises(SignatureMismatch):
            s(sphere2, 0) + s(Signature.toeplitz(2), 0)


class TestProducts:
    @pytest.mark.parametrize("n", [1, 2])
    def test_sphere_relation_product_vanishes(self, n):
        sig = Signature.sphere(n + 1)
        factors = [s(sig, i).one_like() - s(sig, i) * s(sig, i).adjoint() for i in range(n + 1)]
        assert product(factors, sig).is_zero

    def test_defect_annihilates_shift(self):
        sig = Signature.toeplitz(2)
        t0 = s(sig, 0)
        assert ((t0.one_like() - t0 * t0.adjoint()) * t0).is_zero

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_sphere_isometries(self, n):
        sig = Signature.sphere(n + 1)
        for i in range(n + 1):
            assert s(sig, i).adjoint() * s(sig, i) == TensorElement.one(sig)

    def test_partial_defect_survives(self):
        sig = Signature.sphere(2)
        defect = s(sig, 0).one_like() - s(sig, 0) * s(sig, 0).adjoint()
        assert not defect.is_zero

    def test_circle_is_unitary(self):
        u = s(TC, 1)
        assert u * u.adjoint() == TensorElement.one(TC)

    def test_power(self):
        t0 = s(Signature.toeplitz(1), 0)
        assert t0 ** 3 == TensorElement.from_slots(Signature.toeplitz(1), {0: Shift(3)})
        with pytest.raises(ValueError):
            t0 ** -1

    def test_linear_helpers(self):
        t0 = s(Signature.toeplitz(1), 0)
        assert tadd(t0, t0) == tscale(t0, 2)
        assert tscale(t0, 0).is_zero

    def test_tensor_concatenates(self):
        x = s(Signature.toeplitz(1), 0)
        y = s(Signature.circle(), 0)
        assert x.tensor(y).terms == {(Shift(1), Circle(1)): 1}
        assert x.tensor(y).signature == TC


class TestIdeal:
    def test_all_units_in_ideal(self):
        sig = Signature.sphere(3)
        raw = TensorElement(sig, {(Unit(0, 0),) * 3: 1}, canonical=False)
        assert in_ideal(raw)
        assert raw.reinterpret(sig).is_zero

    def test_mixed_tuple_not_in_ideal(self, sphere2):
        x = TensorElement(sphere2, {(Shift(1), Unit(0, 0)): 1})
        assert not in_ideal(x)

    def test_expanded_defect_product(self):
        lifted = Signature.toeplitz(3)
        factors = [s(lifted, i).one_like() - s(lifted, i) * s(lifted, i).adjoint() for i in range(3)]
        expanded = product(factors, lifted)
        assert in_ideal(expanded.reinterpret(Signature.sphere(3), canonical=False))

    def test_ideal_of_unlifted_signature(self):
        assert in_ideal(TensorElement.zero(Signature.toeplitz(2)))
        assert not in_ideal(TensorElement.one(Signature.toeplitz(2)))


class TestGrading:
    def test_invariant_part(self):
        sig = Signature.sphere(2)
        x = s(sig, 0) * s(sig, 1).adjoint()
        assert invariant_part(x) == x
        assert invariant_part(s(sig, 0)).is_zero

    def test_gauge_move_examples(self):
        t = TensorElement(TC, {(Shift(1), Circle(0)): 1})
        assert gauge_move(t, 1) == TensorElement(TC, {(Shift(1), Circle(1)): 1})
        e = TensorElement(TC, {(Unit(0, 0), Circle(3)): 1})
        assert gauge_move(e, 1) == e

    def test_gauge_move_needs_circle_slot(self):
        with pytest.raises(NotACircleSlot):
            gauge_move(TensorElement.one(TC), 0)

    @settings(max_examples=200, deadline=None)
    @given(tensor_elements(Signature.sphere(2) + Signature.circle()),
           tensor_elements(Signature.sphere(2) + Signature.circle()))
    def test_gauge_move_is_multiplicative(self, x, y):
        assert gauge_move(tmul(x, y), 2) == tmul(gauge_move(x, 2), gauge_move(y, 2))
        assert gauge_move(gauge_move(x, 2), 2, inverse=True) == x

    @settings(max_examples=200, deadline=None)
    @given(tensor_elements(Signature.sphere(2) + Signature.circle()),
           tensor_elements(Signature.sphere(2) + Signature.circle()))
    def test_adjoint_reverses_products(self, x, y):
        assert tmul(x, y).adjoint() == tmul(y.adjoint(), x.adjoint())

    def test_tensor_law_report(self):
        report = tensor_laws(n=1, pairs=10, seed=3)
        assert report.status == "pass", report.witness


class TestSymbolAtSlot:
    def test_symbol_turns_slot_into_circle(self):
        sig = Signature.toeplitz(2)
        x = s(sig, 0) + TensorElement.from_toeplitz(sig, 0, ToeplitzElement.unit(0, 0))
        image = apply_symbol_at(x, 0)
        assert image.signature == Signature.circle() + Signature.toeplitz(1)
        assert image.terms == {(Circle(1), Shift(0)): 1}

    def test_sphere_slot_is_rejected(self, sphere2):
        with pytest.raises(IncompatibleSlot):
            apply_symbol_at(s(sphere2, 0), 0)


class TestMatrices:
    def test_u0_is_the_swap(self):
        sig = Signature.toeplitz(2)
        zero, one = TensorElement.zero(sig), TensorElement.one(sig)
        assert witness_u(0) == AlgMatrix.from_rows([[zero, one], [one, zero]])
        assert is_selfadjoint_unitary(witness_u(0))

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_witness_unitaries(self, k):
        assert is_selfadjoint_unitary(witness_u(k))

    def test_boxplus_is_block_diagonal(self):
        sig = Signature.toeplitz(2)
        a = AlgMatrix.identity(sig, 2)
        b = AlgMatrix.from_rows([[s(sig, 0)]])
        m = boxplus(a, b)
        assert m.shape == (3, 3)
        assert m[2, 2] == s(sig, 0)
        assert m[0, 2].is_zero and m[2, 0].is_zero

    def test_matrix_projections(self):
        sig = Signature.toeplitz(2)
        t0 = s(sig, 0)
        p = AlgMatrix.diagonal([t0 * t0.adjoint(), TensorElement.zero(sig)])
        assert is_projection(p)
        assert not is_projection(witness_u(1))
        assert mat_adjoint(witness_u(1)) == witness_u(1)

    def test_shape_mismatch(self):
        sig = Signature.toeplitz(1)
        with pytest.raises(ShapeMismatch):
            AlgMatrix.identity(sig, 2) * AlgMatrix.zeros(sig, 3, 1)


class TestMultipullback:
    @pytest.mark.parametrize("n", [1, 2])
    def test_images_of_generators_are_compatible(self, n):
        sig = Signature.sphere(n + 1)
        for i in range(n + 1):
            report = multipullback_check(multipullback_tuple(s(sig, i)))
            assert report.status == "pass", report.witness

    def test_tuple_signatures(self):
        parts = multipullback_tuple(s(Signature.sphere(2), 0))
        assert [p.signature for p in parts] == [component_signature(1, 0), component_signature(1, 1)]

    def test_perturbed_tuple_fails(self):
        parts = perturb(multipullback_tuple(s(Signature.sphere(2), 0)), 0)
        report = multipullback_check(parts)
        assert report.status == "fail"
        assert (report.witness["i"], report.witness["j"]) == (0, 1)

    def test_identity_tuple(self):
        parts = [TensorElement.one(component_signature(2, i)) for i in range(3)]
        assert multipullback_check(parts).status == "pass"

    def test_wrong_component(self):
        parts = [TensorElement.one(component_signature(1, 0)), TensorElement.one(component_signature(1, 0))]
        with pytest.raises(SignatureMismatch):
            multipullback_check(parts)
