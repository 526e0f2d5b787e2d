from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from osresonance import errors, formats
from osresonance.incidence import braid, hessian, monomial


def test_arrangement_round_trip_coeffs_and_flats():
    for arr in (braid(), hessian(), monomial(2)):
        back = formats.parse_arrangement(formats.write_arrangement(arr))
        assert back.flats2 == arr.flats2


def test_arrangement_comments_and_rationals():
    text = """
    # three lines
    lines 3
    coeffs
    1/2 0 0   # x
    0 1 0
    1 1 -3/4
    """
    arr = formats.parse_arrangement(text)
    assert arr.n == 3 and len(arr.flats2) == 3


@pytest.mark.parametrize("text,lineno", [
    ("lines x\ncoeffs\n", 1),
    ("lines 2\ncoeffs\n1 0 0\n0 1\n", 4),
    ("lines 2\ncoeffs\n1 0 0\n0 1 a\n", 4),
    ("lines 3\nflats\n1 2 4\n", 3),
    ("lines 3\nblah\n", 2),
    ("\n\nlines 2\ncoeffs\n1 0 0\n", 5),
])
def test_arrangement_errors_carry_line_numbers(text, lineno):
    with pytest.raises(errors.ParseError) as exc:
        formats.parse_arrangement(text)
    assert exc.value.lineno == lineno
    assert str(exc.value).startswith(f"line {lineno}:")


def test_matrix_and_graph():
    m = [[2, -1], [-1, 2]]
    assert formats.parse_matrix(formats.write_matrix(m)) == m
    assert formats.parse_graph(formats.write_graph(3, [(1, 2), (2, 3)])) == (3, [(1, 2), (2, 3)])
    with pytest.raises(errors.ParseError) as exc:
        formats.parse_matrix("2\n1 0\n0\n")
    assert exc.value.lineno == 3
    with pytest.raises(errors.ParseError) as exc:
        formats.parse_graph("3 1\n1 4\n")
    assert exc.value.lineno == 2


def test_weights_and_latin():
    w = formats.parse_weights("1 -1/2 -1/2\n# c\n0 1 -1\n", 3)
    assert w[0] == (1, Fraction(-1, 2), Fraction(-1, 2))
    with pytest.raises(errors.ParseError):
        formats.parse_weights("1 2\n", 3)
    n, squares = formats.parse_latin("3\n1 2 3\n2 3 1\n3 1 2\n")
    assert n == 3 and squares[0][1] == (2, 3, 1)
    with pytest.raises(errors.ParseError) as exc:
        formats.parse_latin("2\n1 2\n1 2\n")
    assert exc.value.lineno == 3


@settings(max_examples=50, deadline=None)
@given(st.fractions(max_denominator=50))
def test_rational_format_round_trip(x):
    assert Fraction(formats.format_rational(x)) == x
