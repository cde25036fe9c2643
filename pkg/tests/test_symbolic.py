from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpc.symbolic import (
    LaurentExpr,
    NonPositiveCoefficient,
    NotInverseLaurent,
    RationalExpr,
    as_inverse_polynomial,
    polynomial_from_json,
    polynomial_to_json,
    rational_from_json,
    rational_to_json,
    substitute,
    tropicalize,
)

x = [LaurentExpr.var(3, i) for i in range(3)]
X = [RationalExpr.var(3, i) for i in range(3)]


def test_cancellation():
    assert (x[0] + x[1]) + (-x[1]) == x[0]


def test_inverse_monomial():
    assert x[0] * LaurentExpr.var(3, 0, -1) == LaurentExpr.const(3, 1)


def test_monomial_times_denominator():
    m = LaurentExpr.monomial((-1, 1, -1))
    assert m * x[0] * x[2] == x[1]


def test_no_zero_coefficients_stored():
    f = x[0] - x[0] + x[1]
    assert all(c != 0 for c in f.terms.values())
    assert f == x[1]


def test_rational_equality_by_cross_multiplication():
    a = (X[0] + X[1]) / X[2]
    b = (X[0] * X[0] + X[0] * X[1]) / (X[0] * X[2])
    assert a == b


def test_rational_canonical_denominator():
    f = (X[0] + 1) / (X[1] * (X[0] + 1) * 2)
    assert f.is_laurent()
    assert f == RationalExpr.var(3, 1, -1) * Fraction(1, 2)


def test_substitute_identity():
    assert substitute(X[2], X) == X[2]


def test_substitute_inverse_variable():
    f = RationalExpr.var(3, 1, -1)
    img = [X[0], X[2] / X[1], X[2]]
    assert substitute(f, img) == X[1] / X[2]


def test_varsigma_composition_sl3():
    # W_2 in chamber variables composed with the monomial map of (1,2,1)
    W2 = RationalExpr.var(3, 1, -1) + RationalExpr.var(3, 0, -1) * RationalExpr.var(3, 1, -1)
    ca = [X[1] / (X[0] * X[2]), X[2] / X[1], X[2].inverse()]
    assert substitute(W2, ca) == X[0] + X[1] / X[2]


def test_tropicalize_sigma_sl3():
    t = tropicalize(X[0] + X[1] / X[2])
    assert t.normals() == [(0, 1, -1), (1, 0, 0)]
    assert t((3, 5, 2)) == min(3, 5 - 2)


def test_tropicalize_monomial_is_linear():
    t = tropicalize(LaurentExpr.monomial((2, -1, 3)))
    assert t.is_linear()
    assert t((1, 1, 1)) == 4


def test_tropicalize_w2():
    W2 = LaurentExpr.monomial((0, -1, 0)) + LaurentExpr.monomial((-1, -1, 0))
    t = tropicalize(W2)
    assert t((2, 3, 0)) == min(-3, -5)


def test_tropicalize_rejects_negative():
    with pytest.raises(NonPositiveCoefficient):
        tropicalize(x[0] - x[1])


def test_as_inverse_polynomial_exact_division():
    f = (X[0] + 1) / (X[0] * X[1])
    got = as_inverse_polynomial(f)
    assert got == LaurentExpr.monomial((0, -1, 0)) + LaurentExpr.monomial((-1, -1, 0))


def test_as_inverse_polynomial_rejects_positive():
    with pytest.raises(NotInverseLaurent):
        as_inverse_polynomial(X[0] + 1)


def test_to_string():
    f = LaurentExpr.monomial((0, -1)) + LaurentExpr.monomial((-1, -1))
    assert f.to_string("X") == "X_2^{-1} + X_1^{-1}X_2^{-1}"


def test_json_roundtrip():
    f = LaurentExpr(3, {(1, -2, 0): Fraction(3, 2), (0, 0, 0): 1})
    assert polynomial_from_json(polynomial_to_json(f)) == f
    r = (X[0] + 1) / (X[1] + X[2])
    assert rational_from_json(rational_to_json(r)) == r


# properties

exps = st.tuples(*[st.integers(-3, 3)] * 3)
positive_laurent = st.dictionaries(exps, st.integers(1, 3), min_size=1, max_size=5).map(
    lambda d: LaurentExpr(3, d)
)
any_laurent = st.dictionaries(exps, st.integers(-3, 3), max_size=4).map(lambda d: LaurentExpr(3, d))
points = st.tuples(*[st.integers(-9, 9).filter(bool).map(lambda v: Fraction(v, 7))] * 3)


def _valuation(f: LaurentExpr, pt, K=16):
    """Order of vanishing of f(t^pt) at t = 2^-K.

    Coefficient sums stay below 16, so the bit length pins the exponent.
    """
    value = f.evaluate([Fraction(1, 2) ** (K * c) for c in pt])
    bits = value.numerator.bit_length() - value.denominator.bit_length()
    return round(-bits / K)


@settings(max_examples=200, deadline=None)
@given(positive_laurent, st.tuples(*[st.integers(-10, 10)] * 3))
def test_tropicalization_matches_valuation(f, pt):
    assert tropicalize(f)(pt) == _valuation(f, pt)


@settings(max_examples=100, deadline=None)
@given(positive_laurent, positive_laurent, st.tuples(*[st.integers(-10, 10)] * 3))
def test_tropicalization_of_quotient(f, g, pt):
    r = RationalExpr.from_laurent(f) / RationalExpr.from_laurent(g)
    assert tropicalize(r)(pt) == _valuation(f, pt) - _valuation(g, pt)


@settings(max_examples=100, deadline=None)
@given(any_laurent, any_laurent, any_laurent)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(any_laurent, positive_laurent, points)
def test_substitution_commutes_with_evaluation(f, g, pt):
    images = [RationalExpr.from_laurent(g), X[2] / X[0], X[1] + X[0]]
    values = [im.evaluate(pt) for im in images]
    if any(v == 0 for v in values):
        return
    assert substitute(f, images).evaluate(pt) == f.evaluate(values)
