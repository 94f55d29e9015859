from fractions import Fraction

import pytest
from hypothesis import given, settings

from mpkcheck.core.algebra.signature import Signature
from mpkcheck.core.algebra.tensor import TensorElement
from mpkcheck.core.algebra.toeplitz import Circle, Shift, Unit
from mpkcheck.core.dsl.parser import parse_expr, tokenize
from mpkcheck.core.dsl.printer import format_element
from mpkcheck.utils.error import IncompatibleSlot, ParseError

from conftest import tensor_elements


class TestSignatureText:
    def test_mixed_blocks(self):
        sig = Signature.parse("S2,T,C")
        assert sig.label == "S2,T,C"
        assert sig.slot_count == 4
        assert sig.circle_slots == (3,)

    def test_repeated_slots(self):
        assert Signature.parse("T3") == Signature.toeplitz(3)

    def test_unknown_block(self):
        with pytest.raises(ValueError):
            Signature.parse("T,X")


class TestParse:
    def test_range_projection(self):
        x = parse_expr("t@0 * t@0* ", "T")
        assert x.terms == {(Shift(0),): 1, (Unit(0, 0),): -1}

    def test_isometry_cancels(self):
        assert parse_expr("(1 - t@0*t@0)", "T").is_zero

    def test_unit_times_circle(self):
        x = parse_expr("e(0,0)@0 * u^2@1", "T,C")
        assert x.terms == {(Unit(0, 0), Circle(2)): 1}

    def test_projections(self):
        assert parse_expr("P(2)@0 + Pp(2)@0", "T") == TensorElement.one(Signature.toeplitz(1))

    def test_adj_and_rationals(self):
        x = parse_expr("1/2 * adj(t@0 * t@1)", "T2")
        assert x.terms == {(Shift(-1), Shift(-1)): Fraction(1, 2)}

    def test_juxtaposition_multiplies(self):
        assert parse_expr("t@0 t@0", "T") == parse_expr("t@0 * t@0", "T")

    def test_sphere_quotient(self):
        # (1 - s0 s0*)(1 - s1 s1*) vanishes in C(S^3_H)
        assert parse_expr("(1 - t@0 * t@0*) * (1 - t@1 * t@1*)", "S2").is_zero

    def test_tokens_record_gluing(self):
        tokens = tokenize("t@0* * t@1")
        assert [tok.kind for tok in tokens] == ["T", "STAR", "STAR", "T", "EOF"]
        assert tokens[1].glued and not tokens[2].glued


class TestErrors:
    def test_dangling_operator(self):
        with pytest.raises(ParseError) as info:
            parse_expr("t@0 +", "T")
        assert (info.value.line, info.value.column) == (1, 6)
        assert "t@k" in info.value.expected

    def test_bad_character_on_second_line(self):
        with pytest.raises(ParseError) as info:
            parse_expr("t@0\n+ $", "T")
        assert (info.value.line, info.value.column) == (2, 3)

    def test_unclosed_paren(self):
        with pytest.raises(ParseError):
            parse_expr("(t@0 + 1", "T")

    def test_trailing_tokens(self):
        with pytest.raises(ParseError):
            parse_expr("t@0 )", "T")

    def test_unit_in_circle_slot(self):
        with pytest.raises(IncompatibleSlot) as info:
            parse_expr("1 + e(0,0)@1", "T,C")
        assert info.value.details["column"] == 5

    def test_projection_in_circle_slot(self):
        with pytest.raises(IncompatibleSlot):
            parse_expr("P(1)@0", "C")

    def test_error_payload(self):
        with pytest.raises(ParseError) as info:
            parse_expr("*", "T")
        payload = info.value.to_dict()
        assert payload["details"]["line"] == 1


class TestPrinter:
    def test_zero(self):
        assert format_element(TensorElement.zero(Signature.toeplitz(1))) == "0"

    def test_signs_and_coefficients(self):
        sig = Signature.toeplitz(2)
        x = TensorElement(sig, {(Shift(0), Shift(0)): 3, (Shift(-2), Unit(0, 1)): -1})
        text = format_element(x)
        assert parse_expr(text, sig) == x

    @settings(max_examples=200, deadline=None)
    @given(tensor_elements(Signature.parse("T2,C")))
    def test_round_trip_toeplitz(self, x):
        assert parse_expr(format_element(x), x.signature) == x

    @settings(max_examples=200, deadline=None)
    @given(tensor_elements(Signature.parse("S2,C")))
    def test_round_trip_sphere(self, x):
        assert parse_expr(format_element(x), x.signature) == x
