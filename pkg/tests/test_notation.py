import pytest

from manypoints import curve as cv
from manypoints.fixtures import FIXTURES
from manypoints.notation import (AmbiguousPlace, ParseError, format_curve, format_divisor,
                                 format_place, parse_curve, parse_divisor, parse_place,
                                 parse_place_set, parse_poly)


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_fixture_text_parses(fx):
    C = parse_curve(fx.q, fx.curve)
    D = parse_divisor(C, fx.divisor)
    S = parse_place_set(C, fx.split)
    assert D.is_effective and D.degree > 0
    assert S and not set(S) & set(D.support)


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_format_round_trip(fx):
    C = parse_curve(fx.q, fx.curve)
    assert parse_curve(fx.q, format_curve(C)) == C
    D = parse_divisor(C, fx.divisor)
    assert parse_divisor(C, format_divisor(C, D)) == D
    for pl in cv.places_up_to(C, 2):
        assert parse_place(C, format_place(C, pl)) == pl


def test_infinite_place_forms():
    C = parse_curve(5, "y^2 + 4z^6 + 2z^5 + 3z^3 + 4z^2 + 1")
    a = parse_place(C, "(1/z, 1/z^3y + 1)")
    b = parse_place(C, "(1/z, y/z^3 + 1)")
    assert a == b and a.is_infinite and a.degree == 1


def test_f4_constant_and_variable_synonyms():
    assert parse_poly(4, "x^2 + a x + a^2") == (3, 2, 1)
    with pytest.raises(ParseError):
        parse_poly(2, "x + a")
    C = parse_curve(2, "y^2 + (x^2 + x + 1)y + x^5 + x^4 + x^2 + x")
    assert parse_place(C, "(z + 1, y + z + 1)") == parse_place(C, "(x + 1, y + x + 1)")


def test_non_normalized_ideal_generator():
    C = parse_curve(5, "y^2 + 4z^6 + 2z^5 + 2z^3 + z^2 + 2z")
    # y + 4z + 4 reduces modulo z^2 + 2z + 3 to the same place whatever representative is used
    p1 = parse_place(C, "(z^2 + 2z + 3, y + 4z + 4)")
    p2 = parse_place(C, "(z^2 + 2z + 3, y + 4z + 4 + z^2 + 2z + 3)")
    assert p1 == p2 and p1.degree == 2


def test_ambiguous_place_rejected():
    C = parse_curve(2, "y^2 + (x^2 + x + 1)y + x^5 + x^4 + x^2 + x")
    with pytest.raises(AmbiguousPlace):
        parse_place(C, "(x)")


def test_bad_syntax():
    with pytest.raises(ParseError):
        parse_poly(3, "x^^2")
