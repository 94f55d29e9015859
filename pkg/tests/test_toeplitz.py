import pytest
from hypothesis import given, settings

from mpkcheck.core.algebra.laws import toeplitz_laws
from mpkcheck.core.algebra.toeplitz import (
    Circle,
    LaurentPoly,
    Shift,
    ToeplitzElement,
    Unit,
    adjoint,
    canonicalize,
    degree,
    degree_split,
    is_projection,
    mul,
    proj_P,
    proj_Pperp,
    symbol,
)
from mpkcheck.utils.error import IncompatibleSlot

from conftest import toeplitz_elements

t = ToeplitzElement.shift(1)
ts = ToeplitzElement.shift(-1)
one = ToeplitzElement.one()


class TestMultiplication:
    def test_isometry(self):
        assert mul(ts, t) == one

    def test_range_projection(self):
        assert mul(t, ts) == one - ToeplitzElement.unit(0, 0)

    def test_telescoping(self):
        assert mul(ToeplitzElement.shift(2), ts) == t - ToeplitzElement.unit(1, 0)

    def test_long_telescope(self):
        expected = ToeplitzElement({Shift(0): 1, Unit(1, 1): -1, Unit(0, 0): -1})
        assert mul(ToeplitzElement.shift(2), ToeplitzElement.shift(-2)) == expected

    def test_units_multiply_as_matrix_units(self):
        assert mul(ToeplitzElement.unit(0, 1), ToeplitzElement.unit(1, 2)) == ToeplitzElement.unit(0, 2)
        assert mul(ToeplitzElement.unit(0, 1), ToeplitzElement.unit(0, 2)).is_zero

    def test_shift_moves_units(self):
        assert mul(t, ToeplitzElement.unit(0, 0)) == ToeplitzElement.unit(1, 0)
        assert mul(ts, ToeplitzElement.unit(0, 0)).is_zero

    def test_circle_symbols_are_rejected(self):
        with pytest.raises(IncompatibleSlot):
            ToeplitzElement({Circle(1): 1})


class TestAdjoint:
    def test_examples(self):
        assert adjoint(ToeplitzElement.shift(3)) == ToeplitzElement.shift(-3)
        assert adjoint(ToeplitzElement.unit(1, 2)) == ToeplitzElement.unit(2, 1)

    @given(toeplitz_elements, toeplitz_elements)
    def test_reverses_products(self, a, b):
        assert adjoint(mul(a, b)) == mul(adjoint(b), adjoint(a))

    @given(toeplitz_elements)
    def test_is_an_involution(self, a):
        assert adjoint(adjoint(a)) == a


class TestProjections:
    def test_examples(self):
        assert proj_P(0).is_zero
        assert proj_P(2) == ToeplitzElement({Unit(0, 0): 1, Unit(1, 1): 1})
        assert proj_Pperp(0) == one

    @pytest.mark.parametrize("k", [0, 1, 2, 5, 32])
    def test_projection_laws(self, k):
        assert is_projection(proj_P(k))
        assert is_projection(proj_Pperp(k))

    @pytest.mark.parametrize("k", range(6))
    def test_orthogonal_split(self, k):
        assert proj_Pperp(k) == proj_Pperp(k + 1) + ToeplitzElement.unit(k, k)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            proj_P(-1)

    def test_law_report_passes(self):
        report = toeplitz_laws(k_max=8)
        assert report.status == "pass"
        assert report.metadata["relations_checked"] > 30


class TestSymbol:
    def test_examples(self):
        assert symbol(ToeplitzElement.shift(2) - ToeplitzElement.unit(0, 0)) == LaurentPoly.monomial(2)
        assert symbol(proj_Pperp(5)) == LaurentPoly.one()
        assert symbol(mul(t, ts)) == LaurentPoly.one()

    @given(toeplitz_elements)
    def test_compact_iff_no_shift_part(self, a):
        assert a.is_compact() == a.pure_shift_part().is_zero

    @given(toeplitz_elements, toeplitz_elements)
    def test_compacts_form_an_ideal(self, a, b):
        k = a.finite_rank_part()
        assert symbol(mul(k, b)).is_zero
        assert symbol(mul(b, k)).is_zero

    @given(toeplitz_elements, toeplitz_elements)
    def test_symbol_is_multiplicative(self, a, b):
        assert symbol(mul(a, b)) == symbol(a) * symbol(b)


class TestGrading:
    def test_degrees(self):
        assert degree(Shift(4)) == 4
        assert degree(Unit(1, 3)) == -2

    def test_split_examples(self):
        assert degree_split(t + ToeplitzElement.unit(0, 0)) == {1: t, 0: ToeplitzElement.unit(0, 0)}
        assert degree_split(ToeplitzElement.unit(2, 0)) == {2: ToeplitzElement.unit(2, 0)}

    @given(toeplitz_elements, toeplitz_elements)
    def test_degrees_add(self, a, b):
        for da, pa in degree_split(a).items():
            for db, pb in degree_split(b).items():
                assert set(degree_split(mul(pa, pb))) <= {da + db}


@settings(max_examples=500, deadline=None)
@given(toeplitz_elements, toeplitz_elements, toeplitz_elements)
def test_associativity(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(toeplitz_elements)
def test_canonical_form_is_idempotent(a):
    assert canonicalize(a) == a
    assert all(c != 0 for _, c in a.items())
