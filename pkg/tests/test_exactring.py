from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hgmoduli.errors import BadRange, DivisionInexact
from hgmoduli.exactring import (
    L,
    LPoly,
    ONE,
    ZERO,
    binomial_series_coeff,
    format_lpoly,
    grassmannian_class,
    parse_lpoly,
    poly_adams,
    poly_exact_div,
    projective_class,
)

from conftest import P, lpolys


def gaussian_oracle(r, k):
    """Count partitions in an r x (k-r) box by size."""
    counts = [0] * (r * (k - r) + 1)

    def walk(parts_left, max_part, total):
        counts[total] += 1
        if parts_left == 0:
            return
        for part in range(1, max_part + 1):
            walk(parts_left - 1, part, total + part)

    walk(r, k - r, 0)
    return LPoly(counts)


def test_normal_form():
    p = LPoly([Fraction(2, 4), Fraction(0), 0, 0])
    assert p.numerators == (1,) and p.denominator == 2 and p.degree == 0
    assert LPoly([0, 0]) == ZERO and ZERO.degree == -1 and ZERO.denominator == 1
    assert LPoly([2, 4], den=6) == LPoly([Fraction(1, 3), Fraction(2, 3)])


def test_exact_div_examples():
    assert poly_exact_div(L ** 3 - L, L + 1) == L ** 2 - L
    assert poly_exact_div(L ** 5 - L ** 3, L ** 3 - L) == L ** 2
    with pytest.raises(DivisionInexact):
        poly_exact_div(L + 1, L)
    with pytest.raises(DivisionInexact):
        poly_exact_div(L, L ** 2)


def test_exact_div_non_monic():
    a = (2 * L + 1) * (L ** 2 - Fraction(1, 3))
    assert poly_exact_div(a, 2 * L + 1) == L ** 2 - Fraction(1, 3)
    assert poly_exact_div(a, 3 * L ** 2 - 1) == (2 * L + 1).scale(Fraction(1, 3))


@given(lpolys(), lpolys().filter(bool))
def test_exact_div_inverts_mul(a, b):
    assert poly_exact_div(a * b, b) == a


def test_adams_examples():
    assert poly_adams((L + 1) ** 2, 2) == (L ** 2 + 1) ** 2
    f = P(3, -1, Fraction(1, 2))
    assert poly_adams(f, 1) == f
    assert poly_adams(L ** 3 - L, 3) == L ** 9 - L ** 3


@given(lpolys(), lpolys(), st.integers(1, 4), st.integers(1, 4))
def test_adams_is_ring_endomorphism(a, b, m, n):
    assert poly_adams(a * b, n) == poly_adams(a, n) * poly_adams(b, n)
    assert poly_adams(a + b, n) == poly_adams(a, n) + poly_adams(b, n)
    assert poly_adams(poly_adams(a, m), n) == poly_adams(a, m * n)


def test_binomial_examples():
    assert binomial_series_coeff(L + 1, 2) == (L ** 2 + L).scale(Fraction(1, 2))
    assert binomial_series_coeff(L ** 7 - 3, 0) == ONE
    f = (L ** 2 - L).scale(Fraction(1, 2))
    assert binomial_series_coeff(f, 1) == f


@given(lpolys(max_degree=3), st.integers(1, 5))
def test_binomial_pascal(f, j):
    assert binomial_series_coeff(f, j) == binomial_series_coeff(f - 1, j) + binomial_series_coeff(f - 1, j - 1)


@given(st.integers(0, 12), st.integers(0, 6))
def test_binomial_at_integers(m, j):
    assert binomial_series_coeff(LPoly([m]), j) == comb(m, j)


@pytest.mark.parametrize("m,want", [(0, P(1)), (1, P(1, 1)), (3, P(1, 1, 1, 1))])
def test_projective_class(m, want):
    assert projective_class(m) == want


def test_grassmannian_examples():
    assert grassmannian_class(1, 2) == 1 + L
    assert grassmannian_class(2, 4) == (L ** 2 + 1) * (L ** 2 + L + 1) == P(1, 1, 2, 1, 1)
    assert grassmannian_class(2, 5) == P(1, 1, 2, 2, 2, 1, 1)
    assert grassmannian_class(0, 3) == ONE and grassmannian_class(3, 3) == ONE
    with pytest.raises(BadRange):
        grassmannian_class(4, 3)
    with pytest.raises(BadRange):
        grassmannian_class(-1, 3)


@pytest.mark.parametrize("k", range(1, 9))
def test_grassmannian_oracles(k):
    for r in range(0, k + 1):
        g = grassmannian_class(r, k)
        assert g == gaussian_oracle(r, k)
        assert g == grassmannian_class(k - r, k)
        assert g(1) == comb(k, r)
        assert g.is_integral() and all(c >= 0 for c in g.numerators)
        assert g.degree == r * (k - r)


@given(lpolys(), lpolys(), st.integers(-3, 3))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a - b)(x) == a(x) - b(x)


@given(lpolys())
def test_text_round_trip(p):
    assert parse_lpoly(format_lpoly(p)) == p
    assert parse_lpoly(format_lpoly(p, compact=True)) == p


def test_text_form():
    assert format_lpoly(L ** 3 - L) == "L^3 - L"
    assert format_lpoly((L ** 2 + L).scale(Fraction(1, 2))) == "(L^2+L)/2"
    assert format_lpoly(ZERO) == "0"
    assert format_lpoly(-L.scale(Fraction(1, 2))) == "-L/2"
