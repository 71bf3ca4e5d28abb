import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abcf.errors import InvalidDenominator, ParseError, UnsupportedField
from abcf.surd import INF, Surd, format_number, neg_inv, parse_number, surd_compare, surd_normalize


def canon(s):
    return (s.p, s.q, s.r, s.d)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((2, 0, 4, 5), (1, 0, 2, 0)),
        ((1, -1, 2, 5), (1, -1, 2, 5)),
        ((-2, 2, -4, 5), (1, -1, 2, 5)),
    ],
)
def test_normalize_examples(args, expected):
    assert canon(surd_normalize(*args)) == expected


def test_normalize_zero_denominator():
    with pytest.raises(InvalidDenominator):
        surd_normalize(1, 1, 0, 5)


def test_square_factors_are_pulled_out():
    # sqrt(8) = 2 sqrt(2)
    assert canon(Surd(0, 1, 1, 8)) == (0, 2, 1, 2)
    assert Surd(0, 1, 1, 4) == 2


def test_compare_examples():
    golden = Surd(1, -1, 2, 5)
    assert surd_compare(golden, Fraction(-1, 2)) == -1
    assert surd_compare(Surd(0), Surd(0)) == 0
    assert surd_compare(Surd(3, -1, 2, 5), Fraction(1, 2)) == -1


def test_mixed_fields_rejected():
    with pytest.raises(UnsupportedField):
        surd_compare(Surd.sqrt(5), Surd.sqrt(2))


def test_neg_inv_infinity():
    assert neg_inv(Surd(0)) is INF
    assert neg_inv(INF) == 0


@pytest.mark.parametrize(
    "text, value",
    [
        ("-4/5", Surd(-4, 0, 5)),
        ("(1-sqrt(5))/2", Surd(1, -1, 2, 5)),
        ("sqrt(2)", Surd(0, 1, 1, 2)),
        ("0.4", Surd(2, 0, 5)),
        ("oo", INF),
        ("(3+2*sqrt(5))/7", Surd(3, 2, 7, 5)),
    ],
)
def test_parse(text, value):
    assert parse_number(text) == value


def test_parse_float_suffix():
    assert isinstance(parse_number("0.4f"), float)


@pytest.mark.parametrize("text", ["", "x", "sqrt(2)+sqrt(3)", "1/0", "sqrt(sqrt(2))"])
def test_parse_errors(text):
    with pytest.raises((ParseError, InvalidDenominator, UnsupportedField)):
        parse_number(text)


surds = st.builds(
    Surd,
    st.integers(-10**6, 10**6),
    st.integers(-1000, 1000),
    st.integers(1, 10**4),
    st.sampled_from([2, 3, 5, 7]),
)


@given(surds)
def test_format_round_trips(x):
    assert parse_number(format_number(x)) == x


@given(surds, surds)
def test_field_arithmetic_is_exact(x, y):
    if x.d and y.d and x.d != y.d:
        return
    assert (x + y) - y == x
    if y:
        assert (x * y) / y == x


@given(surds, surds)
def test_ordering_agrees_with_floats_when_well_separated(x, y):
    if x.d and y.d and x.d != y.d:
        return
    fx, fy = float(x), float(y)
    if abs(fx - fy) > 1e-9 * (1 + abs(fx) + abs(fy)):
        assert (x < y) == (fx < fy)


@given(surds)
def test_floor_is_exact(x):
    f = math.floor(x)
    assert f <= x < f + 1
