from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardcore.exact_arith import (
    BivariatePolynomial,
    IntPolynomial,
    Order,
    binomial_power,
    coeffwise_leq,
    compare_powered,
    eval_rational,
    poly_add,
    poly_mul,
    poly_pow,
    powered_sides,
)

polys = st.lists(st.integers(-50, 50), max_size=6).map(IntPolynomial)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
nonneg = st.fractions(min_value=0, max_value=20, max_denominator=12)


def test_pow_examples():
    assert poly_pow(IntPolynomial([1, 1]), 0) == IntPolynomial([1])
    assert poly_pow(IntPolynomial([1, 3]), 2) == IntPolynomial([1, 6, 9])
    assert poly_mul(IntPolynomial(), IntPolynomial([1, 2])).is_zero()
    with pytest.raises(ValueError):
        poly_pow(IntPolynomial([1]), -1)


def test_normalisation():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).coeffs == ()
    assert (IntPolynomial([1, 1]) - IntPolynomial([1, 1])).is_zero()


def test_eval_examples():
    p = IntPolynomial([1, 3])
    assert eval_rational(p, 1) == 4
    assert eval_rational(p, Fraction(1, 2)) == Fraction(5, 2)
    assert eval_rational(IntPolynomial(), Fraction(7, 3)) == 0


def test_eval_rejects_floats():
    with pytest.raises(TypeError):
        eval_rational(IntPolynomial([1]), 0.5)


@given(polys, polys, polys)
def test_distributive(p, q, r):
    assert poly_mul(poly_add(p, q), r) == poly_add(poly_mul(p, r), poly_mul(q, r))


@given(polys, st.integers(0, 5), st.integers(0, 5))
def test_power_adds_exponents(p, a, b):
    assert poly_pow(p, a + b) == poly_pow(p, a) * poly_pow(p, b)


@given(polys, polys, rationals)
def test_eval_is_ring_homomorphism(p, q, x):
    assert eval_rational(p * q, x) == eval_rational(p, x) * eval_rational(q, x)
    assert eval_rational(p + q, x) == eval_rational(p, x) + eval_rational(q, x)


def test_binomial_power():
    assert binomial_power(4) == IntPolynomial([1, 4, 6, 4, 1])
    assert binomial_power(5) == IntPolynomial([1, 1]) ** 5


def test_compare_powered_examples():
    assert compare_powered(4, 1, 16, 2) is Order.EQUAL
    assert compare_powered(11, 4, 7, 5) is Order.GREATER
    assert powered_sides(11, 4, 7, 5) == (11 ** 5, 7 ** 4)
    assert compare_powered(0, 3, 0, 5) is Order.EQUAL
    with pytest.raises(ValueError):
        compare_powered(-1, 1, 1, 1)


@given(nonneg, st.integers(1, 6))
def test_compare_powered_reflexive(a, e):
    assert compare_powered(a, e, a, e) is Order.EQUAL


@given(nonneg, st.integers(1, 4), nonneg, st.integers(1, 4))
def test_compare_powered_matches_direct_powers(a, p, b, q):
    expected = (a ** q > b ** p) - (a ** q < b ** p)
    got = {Order.LESS: -1, Order.EQUAL: 0, Order.GREATER: 1}[compare_powered(a, p, b, q)]
    assert got == expected


def test_coeffwise_leq_examples():
    assert coeffwise_leq(IntPolynomial([1, 2]), IntPolynomial([1, 3])).holds
    bad = coeffwise_leq(IntPolynomial([1, 4]), IntPolynomial([1, 3]))
    assert not bad.holds and (bad.witness, bad.lhs_coeff, bad.rhs_coeff) == (1, 4, 3)
    p = IntPolynomial([1, 5, 5])
    same = coeffwise_leq(p, p)
    assert same.holds and set(same.slack) == {0}


def test_coeffwise_missing_coefficients_are_zero():
    r = coeffwise_leq(IntPolynomial([1, 1, 1]), IntPolynomial([1, 1]))
    assert not r.holds and r.witness == 2


def test_bivariate_basics():
    p = BivariatePolynomial({(0, 0): 1, (1, 0): 2, (0, 1): 2})
    sq = p * p
    assert sq.coeff(1, 1) == 8
    assert sq.diagonal() == IntPolynomial([1, 4]) ** 2
    assert (p ** 3).evaluate(1, 1) == 125
    assert p.swap().coeff(0, 1) == 2
    assert BivariatePolynomial.from_json(p.to_json()) == p
    assert BivariatePolynomial({(1, 1): 0}).coeffs == {}


def test_json_and_pretty():
    p = IntPolynomial([1, 6, 6, 2])
    assert p.pretty() == "1 + 6λ + 6λ² + 2λ³"
    assert IntPolynomial([0, -1, 0, 12]).pretty() == "-λ + 12λ³"
    big = IntPolynomial([2 ** 80])
    assert IntPolynomial.from_json(big.to_json()) == big
    assert big.to_json() == [str(2 ** 80)]
