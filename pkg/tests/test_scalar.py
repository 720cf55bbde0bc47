from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sdsets.errors import IncompatibleExtension, Inexpressible, NegativeRadicand, ParseError
from sdsets.scalar import (FloatScalar, QuadExt, format_scalar, parse_scalar, sign,
                           simplify, sqrt_extend, squarefree_decompose)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


def quads(d=5):
    return st.builds(lambda a, b: QuadExt(a, b, d), rationals, rationals)


def test_rational_add():
    assert Fraction(1, 2) + Fraction(1, 3) == Fraction(5, 6)


def test_sqrt5_squared():
    r5 = QuadExt(0, 1, 5)
    sq = r5 * r5
    assert (sq.a, sq.b, sq.d) == (5, 0, 5)
    assert sq == 5


def test_sign_of_sqrt2_minus_one():
    assert QuadExt(-1, 1, 2).sign() == 1
    assert QuadExt(1, -1, 2).sign() == -1
    assert QuadExt(3, -2, 2).sign() == 1  # 9 > 8


def test_mixed_extensions_rejected():
    with pytest.raises(IncompatibleExtension):
        QuadExt(0, 1, 5) + QuadExt(0, 1, 3)


def test_rational_promotes():
    x = Fraction(1, 2) + QuadExt(0, 1, 5)
    assert isinstance(x, QuadExt) and x == QuadExt(Fraction(1, 2), 1, 5)
    assert 2 * QuadExt(1, 1, 5) == QuadExt(2, 2, 5)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadExt(1, 1, 5) / QuadExt(0, 0, 5)
    with pytest.raises(ZeroDivisionError):
        Fraction(1) / Fraction(0)


def test_float_tolerance_equality():
    x = FloatScalar(0.1 + 0.2, 1e-12)
    assert x == Fraction(3, 10)
    assert FloatScalar(1.0, 1e-3) + FloatScalar(2.0, 1e-6) == FloatScalar(3.0005, 1e-3)
    assert (FloatScalar(1.0, 1e-3) * FloatScalar(2.0, 1e-6)).tol == 1e-3
    assert not FloatScalar(1e-13)


def test_float_absorbs_exact():
    y = QuadExt(0, 1, 5) * FloatScalar(2.0)
    assert isinstance(y, FloatScalar)
    assert abs(y.value - 2 * 5 ** 0.5) < 1e-12


@pytest.mark.parametrize("x, d, expected", [
    (Fraction(9, 4), None, Fraction(3, 2)),
    (Fraction(5), 5, QuadExt(0, 1, 5)),
    (Fraction(3, 4), None, QuadExt(0, Fraction(1, 2), 3)),
    (Fraction(1, 5), 5, QuadExt(0, Fraction(1, 5), 5)),
    (Fraction(0), 7, Fraction(0)),
])
def test_sqrt_extend(x, d, expected):
    r = sqrt_extend(x, d)
    assert r == expected and type(r) is type(expected)


def test_sqrt_extend_inexpressible():
    with pytest.raises(Inexpressible):
        sqrt_extend(Fraction(3), 5)


def test_sqrt_extend_negative():
    with pytest.raises(NegativeRadicand):
        sqrt_extend(Fraction(-1))


def test_sqrt_in_extension():
    # (1 + sqrt5)^2 = 6 + 2 sqrt5
    assert sqrt_extend(QuadExt(6, 2, 5)) == QuadExt(1, 1, 5)
    # (5 - sqrt5)/10 has norm 1/5, not a square in Q(sqrt5)
    with pytest.raises(Inexpressible):
        sqrt_extend(QuadExt(Fraction(1, 2), Fraction(-1, 10), 5))


def test_squarefree_decompose():
    assert squarefree_decompose(72) == (6, 2)
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(30) == (1, 30)


def test_simplify():
    assert type(simplify(QuadExt(3, 0, 5))) is Fraction
    assert type(simplify(QuadExt(3, 1, 5))) is QuadExt


@pytest.mark.parametrize("x, text", [
    (Fraction(5, 6), "5/6"),
    (Fraction(-2), "-2/1"),
    (QuadExt(Fraction(1, 2), Fraction(-3, 7), 5), "1/2+-3/7*sqrt(5)"),
])
def test_text_form(x, text):
    assert format_scalar(x) == text
    assert parse_scalar(text) == x


def test_float_text_form():
    assert format_scalar(FloatScalar(0.25)) == "~0.25"
    assert parse_scalar("~0.25").value == 0.25


def test_parse_rejects_garbage():
    with pytest.raises(ParseError):
        parse_scalar("1/2+sqrt(5)")


@given(rationals, rationals)
def test_rational_round_trip(a, b):
    assert parse_scalar(format_scalar(a)) == a
    q = QuadExt(a, b, 7)
    back = parse_scalar(format_scalar(q))
    assert (back.a, back.b, back.d) == (q.a, q.b, q.d)


@settings(max_examples=150)
@given(quads(), quads(), quads())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == 0
    if x:
        assert x * (1 / x) == 1
        assert (y / x) * x == y


@settings(max_examples=200)
@given(quads(2))
def test_sign_agrees_with_float(x):
    approx = float(x)
    if abs(approx) > 1e-9:
        assert sign(x) == (1 if approx > 0 else -1)


@given(quads(3), quads(3))
def test_order_consistent(x, y):
    assert (x < y) == (sign(y - x) > 0)
    assert (x == y) == (sign(x - y) == 0)
