from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbitforge.scalars import GaussianRational, gr
from orbitforge.series import TruncatedSeries, ZeroSeries, parse_series


def S(text, K=None):
    return parse_series(text, "t", K)


def long_division_inverse(s: TruncatedSeries, terms: int) -> TruncatedSeries:
    """Independent oracle: schoolbook long division of 1 by the series."""
    v = s.valuation
    rel = [s.coefficient(v + i) for i in range(terms + 1)]
    out = []
    rem = [gr(1)] + [gr(0)] * terms
    for i in range(terms + 1):
        q = rem[i] / rel[0]
        out.append(q)
        for j in range(len(rel)):
            if i + j <= terms:
                rem[i + j] = rem[i + j] - q * rel[j]
    return TruncatedSeries("t", -v, out, -v + terms)


def test_invert_geometric():
    """1 + t inverts to the alternating geometric series."""
    s = S("1 + t", K=4)
    inv = s.invert()
    assert inv.matches(S("1 - t + t^2 - t^3 + t^4", K=4))


def test_invert_monomial():
    s = TruncatedSeries.monomial("t", 2, 1, K=4)
    inv = s.invert()
    assert inv.valuation == -2
    assert inv.coefficient(-2) == gr(1)


def test_invert_long_division_oracle():
    """2 + t + t^2: expected values frozen from the long-division oracle."""
    s = S("2 + t + t^2", K=3)
    inv = s.invert()
    oracle = long_division_inverse(s, 3)
    assert inv.matches(oracle)
    # frozen oracle values
    assert inv.coefficient(0) == gr(Fraction(1, 2))
    assert inv.coefficient(1) == gr(Fraction(-1, 4))
    assert inv.coefficient(2) == gr(Fraction(-1, 8))
    # and the defining property: s * inv == 1 up to the certified order
    assert (s * inv).matches(TruncatedSeries.one("t"))


def test_invert_zero_raises():
    with pytest.raises(ZeroSeries):
        TruncatedSeries.zero("t", K=5).invert()


def test_truncation_bookkeeping_mul():
    a = S("t^-1 + 1", K=3)   # val -1, K 3
    b = S("1 + t", K=2)      # val 0, K 2
    prod = a * b
    # certified to min(3 + 0, 2 + (-1)) = 1
    assert prod.K == 1
    assert prod.coefficient(-1) == gr(1)
    assert prod.coefficient(0) == gr(2)
    assert prod.coefficient(1) == gr(1)
    with pytest.raises(ValueError):
        prod.coefficient(2)


def test_parse_and_str_roundtrip():
    s = S("(1+i)*t^-1 + 1/2 - 3*t^2", K=5)
    assert parse_series(str(s), "t", 5).matches(s)


def test_substitute_power():
    s = S("t^-1 + t", K=3)
    r = s.substitute_power(2)
    assert r.valuation == -2
    assert r.coefficient(2) == gr(1)
    assert r.K == 7


coeff = st.integers(min_value=-9, max_value=9).map(
    lambda n: GaussianRational(Fraction(n, 1)))


@st.composite
def random_series(draw, K=16):
    val = draw(st.integers(min_value=-3, max_value=3))
    n = draw(st.integers(min_value=1, max_value=6))
    cs = [draw(coeff) for _ in range(n)]
    return TruncatedSeries("t", val, cs, K)


@given(random_series(), random_series(), random_series())
@settings(max_examples=60, deadline=None)
def test_ring_laws_to_truncation(a, b, c):
    """(a*b)*c and a*(b*c) agree on every coefficient both sides certify."""
    left = (a * b) * c
    right = a * (b * c)
    assert left.matches(right)
    assert ((a + b) * c).matches(a * c + b * c)


@given(random_series())
@settings(max_examples=60, deadline=None)
def test_invert_roundtrip(s):
    """s * invert(s) - 1 has no certified nonzero coefficient."""
    if s.is_zero():
        return
    diff = s * s.invert() - TruncatedSeries.one("t")
    assert diff.is_zero()
