import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2weight.algebra import (
    C,
    CasimirPoly,
    SeriesX,
    falling_factorial,
    interpolate,
    series_exp,
    series_mul,
    stirling2,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(rationals, max_size=6).map(CasimirPoly)


def P(*coeffs):
    return CasimirPoly(coeffs)


def test_basic_arithmetic():
    assert C * (C - 1) == P(0, -1, 1)
    p = P(3, 0, 2)
    assert p + CasimirPoly() == p
    assert (C - 3).scale(Fraction(1, 6)) == P(Fraction(-1, 2), Fraction(1, 6))


def test_degree_of_product():
    a, b = P(1, 2, 3), P(0, 5)
    assert (a * b).degree == a.degree + b.degree
    assert CasimirPoly().degree == -1
    assert CasimirPoly([0, 0, 0]).coeffs == ()


def test_evaluate():
    assert (C * C - C).evaluate(2) == 2
    assert CasimirPoly().evaluate(Fraction(7, 3)) == 0
    w2 = P(0, -4, 8, -4, 1)
    assert w2.evaluate(1) == 1


def test_str_and_json_roundtrip():
    p = P(0, -4, 8, -4, 1)
    assert str(p) == "c^4 - 4c^3 + 8c^2 - 4c"
    assert str(P(Fraction(-1, 2), Fraction(1, 6))) == "(1/6)c - 1/2"
    assert str(CasimirPoly()) == "0"
    obj = p.to_json()
    assert obj == {"variable": "c", "coeffs": [["0", "1"], ["-4", "1"], ["8", "1"], ["-4", "1"], ["1", "1"]]}
    assert CasimirPoly.from_json(obj) == p


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == CasimirPoly()


@given(st.lists(rationals, max_size=11))
@settings(max_examples=40, deadline=None)
def test_interpolate_inverts_sampling(coeffs):
    p = CasimirPoly(coeffs)
    pts = [(x, p.evaluate(x)) for x in range(len(coeffs) + 1)]
    assert interpolate(pts) == p


def test_interpolate_examples():
    assert interpolate([(0, 0), (1, 1), (2, 4)]) == C * C
    assert interpolate([(5, 3)]) == P(3)
    target = P(0, -4, 8, -4, 1)
    pts = [(x, target.evaluate(x)) for x in (Fraction(0), Fraction(3, 2), Fraction(4), 7, Fraction(12))]
    assert interpolate(pts) == target
    with pytest.raises(ValueError):
        interpolate([(1, 2), (1, 3)])


def test_series_exp_and_mul():
    N = 6
    assert series_exp(SeriesX.zero(N)) == SeriesX.one(N)
    e = series_exp(SeriesX([0, -C], N))
    assert e[2] == (C * C).scale(Fraction(1, 2))
    for k in range(N + 1):
        assert e[k] == (-C) ** k * Fraction(1, math.factorial(k))
    x = SeriesX([0, 1], N)
    assert series_mul(series_exp(x), series_exp(-x)) == SeriesX.one(N)


def test_series_guards():
    with pytest.raises(ValueError):
        series_exp(SeriesX([1], 3))
    s = SeriesX([1, 2], 3)
    with pytest.raises(IndexError):
        s[4]
    # products truncate at the smaller order
    assert (s * SeriesX([1], 1)).order == 1


def _partitions_into(n, m):
    # brute force: surjections onto m labelled blocks, divided by m!
    if m == 0:
        return 1 if n == 0 else 0
    count = sum(1 for f in itertools.product(range(m), repeat=n) if len(set(f)) == m)
    return count // math.factorial(m)


@pytest.mark.parametrize("n", range(0, 7))
def test_stirling_against_enumeration(n):
    for m in range(0, n + 2):
        assert stirling2(n, m) == _partitions_into(n, m)


def test_stirling_values():
    assert stirling2(4, 2) == 7
    assert all(stirling2(n, n) == 1 for n in range(9))
    assert stirling2(6, 2) == 31
    assert all(stirling2(n, n - 1) == math.comb(n, 2) for n in range(1, 9))


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(Fraction(7, 3), 0) == 1
    assert falling_factorial(-2, 3) == -24


@given(rationals, st.integers(1, 8))
def test_stirling_falling_factorial_identity(x, N):
    assert sum(stirling2(N, k) * falling_factorial(x, k) for k in range(1, N + 1)) == x**N


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_alternating_stirling_sum(a):
    for N in range(1, 9):
        lhs = sum(
            (-1) ** (m - 1) * math.factorial(m - 1) * stirling2(N, m - a)
            for m in range(a, N + a + 1)
        )
        assert lhs == (-1) ** (a - 1) * math.factorial(a - 1) * (-a) ** N
