from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from descalg.qpoly import (
    ONE,
    ZERO,
    Poly,
    TruncatedSeries,
    coefficient_of,
    pochhammer,
    pochhammer_inverse,
    q_binomial,
    q_int,
    series_add,
    series_from_terms,
    series_identity_check,
    series_mul,
    shifted_binomial_in_x,
)

q = Poly.var("q")
t = Poly.var("t")
x = Poly.var("x")


def brute_q_binomial(a: int, b: int) -> Poly:
    """q-count of weakly increasing sequences 0 <= i_1 <= ... <= i_b <= a - b."""
    exps = [sum(c) for c in itertools.combinations_with_replacement(range(a - b + 1), b)]
    return Poly.from_exponents("q", exps)


def test_q_binomial_examples():
    assert q_binomial(5, 0) == ONE
    assert q_binomial(4, 2) == 1 + q + 2 * q**2 + q**3 + q**4
    assert q_binomial(3, 1).evaluate(q=1) == 3
    assert q_binomial(2, 3) == ZERO


@pytest.mark.parametrize("a", range(0, 9))
def test_q_binomial_brute_force(a):
    for b in range(a + 1):
        assert q_binomial(a, b) == brute_q_binomial(a, b)


@pytest.mark.parametrize("a", range(1, 13))
def test_q_binomial_symmetry_and_pascal(a):
    for b in range(a + 1):
        assert q_binomial(a, b) == q_binomial(a, a - b)
        assert q_binomial(a, b) == q_binomial(a - 1, b - 1) + q**b * q_binomial(a - 1, b)
        assert q_binomial(a, b).evaluate(q=1) == math.comb(a, b)


def test_q_int():
    assert q_int(0) == ZERO
    assert q_int(3) == 1 + q + q**2


def test_pochhammer_inverse_examples():
    s1 = pochhammer_inverse(1, 6)
    assert all(s1.coefficient_of(t=j) == ONE for j in range(7))
    assert pochhammer_inverse(2, 4).coefficient_of(t=2) == 1 + q + q**2
    assert pochhammer_inverse(0, 5).poly == ONE
    assert coefficient_of(pochhammer_inverse(3, 5), t=1) == 1 + q + q**2


@pytest.mark.parametrize("m", range(0, 7))
def test_pochhammer_inverse_is_inverse(m):
    for J in (0, 3, 10):
        s = pochhammer_inverse(m, J) * pochhammer(m)
        assert s.poly == ONE


def test_series_arithmetic():
    a = TruncatedSeries(1 + t, {"t": 1})
    b = TruncatedSeries(1 - t, {"t": 1})
    assert series_mul(a, b).poly == ONE
    zero = TruncatedSeries(ZERO, {"t": 1})
    assert series_add(a, zero) == a
    with pytest.raises(ValueError):
        series_add(a, TruncatedSeries(ONE, {"t": 2}))


def test_series_identity_examples():
    J = 6
    lhs = series_from_terms((({"t": j}, j + 1) for j in range(J + 1)), {"t": J})
    assert series_identity_check(lhs, ONE, [(1 - t) ** 2])
    lhs2 = series_from_terms((({"t": j}, (j + 1) ** 2) for j in range(J + 1)), {"t": J})
    assert series_identity_check(lhs2, 1 + t, [(1 - t) ** 3])
    bad = series_identity_check(lhs2, 1 + 2 * t, [(1 - t) ** 3])
    assert not bad
    assert bad.witness["exponent"] == {"t": 1}
    assert bad.witness["lhs"] == "1" and bad.witness["rhs"] == "2"


def test_shifted_binomial_examples():
    assert shifted_binomial_in_x(1, 1, 2) == (x**2 + x) / 2
    assert shifted_binomial_in_x(Fraction(1, 2), Fraction(1, 2), 1) == x / 2 + Fraction(1, 2)
    assert shifted_binomial_in_x(1, 0, 2).evaluate(x=4) == 6


def _numeric_binom(m: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= m - i
    return out / math.factorial(n)


@pytest.mark.parametrize("a,b", [(1, 0), (1, -1), (Fraction(1, 2), 0), (Fraction(1, 2), Fraction(-1, 2)),
                                 (Fraction(1, 3), Fraction(-1, 3)), (Fraction(1, 4), Fraction(2, 1))])
def test_shifted_binomial_matches_numeric(a, b):
    for n in range(0, 6):
        p = shifted_binomial_in_x(a, b, n)
        for xv in range(0, 2 * n + 3):
            assert p.evaluate(x=xv) == _numeric_binom(a * xv + b, n)


small_polys = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(0, 3)),
    st.fractions(min_value=-20, max_value=20, max_denominator=5),
    max_size=5,
).map(lambda d: sum((Poly.monomial(c, q=i, t=j) for (i, j), c in d.items()), ZERO))
points = st.sampled_from([Fraction(v, d) for v in range(-3, 4) if v for d in (1, 2, 3)])


@given(small_polys, small_polys, points, points)
def test_evaluation_is_a_ring_homomorphism(a, b, qv, tv):
    ev = lambda p: p.evaluate(q=qv, t=tv)  # noqa: E731
    assert ev(a + b) == ev(a) + ev(b)
    assert ev(a * b) == ev(a) * ev(b)
    assert ev(a - b) == ev(a) - ev(b)


@given(small_polys)
def test_json_round_trip(a):
    data = a.to_json()
    names = data["variables"]
    back = sum((Poly.monomial(Fraction(c), **dict(zip(names, e))) for e, c in data["terms"]), ZERO)
    assert back == a


def test_canonical_text():
    assert (1 + 13 * t + 4 * t**2).to_text() == "1 + 13*t + 4*t^2"
