from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitforge.scalars import GaussianRational, gr


small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)
scalars = st.builds(GaussianRational, small_rationals, small_rationals)


def test_basic_arithmetic():
    a = gr(Fraction(1, 2), Fraction(1, 3))
    b = gr(2, -1)
    assert a + b == gr(Fraction(5, 2), Fraction(-2, 3))
    assert a * b == gr(Fraction(1, 2) * 2 + Fraction(1, 3), Fraction(2, 3) - Fraction(1, 2))


def test_division_roundtrip():
    a = gr(3, -2)
    b = gr(Fraction(1, 7), 5)
    assert (a / b) * b == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        gr(1) / gr(0)


def test_conjugate_and_norm():
    a = gr(2, 3)
    assert a * a.conjugate() == gr(13)
    assert a.norm2() == Fraction(13)


@given(scalars, scalars, scalars)
def test_field_laws(a, b, c):
    """Associativity and distributivity hold exactly."""
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars)
def test_parse_roundtrip(a):
    assert GaussianRational.parse(str(a)) == a


def test_parse_forms():
    assert GaussianRational.parse("3/4") == gr(Fraction(3, 4))
    assert GaussianRational.parse("1/2+1/3*i") == gr(Fraction(1, 2), Fraction(1, 3))
    assert GaussianRational.parse("-i") == gr(0, -1)
    assert GaussianRational.parse("2-i") == gr(2, -1)


def test_powers():
    assert gr(0, 1) ** 2 == gr(-1)
    assert gr(2) ** -2 == gr(Fraction(1, 4))
