import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SL3, SL5
from qpc.cluster import (
    NotFoundWithinDepth,
    SeedPath,
    a_mutate,
    find_optimized_seed,
    lg_potential,
    lg_potential_chart,
    lg_potential_via_fpoly,
    x_pullback_step,
    y_mutate,
)
from qpc.quiver import IceQuiver, exchange_matrix, mutate_exchange_matrix, mutate_quiver
from qpc.rep import enumerate_thin_quotients
from qpc.symbolic import LaurentExpr, RationalExpr
from qpc.typea import gamma_qp, projective_for_index, reduced_words

Q = gamma_qp(SL3).quiver


def X(m, i, p=1):
    return RationalExpr.var(m, i - 1, p)


def mono(*e):
    return LaurentExpr.monomial(e)


def test_pullback_of_inverse_mutated_variable():
    b = exchange_matrix(Q)
    assert x_pullback_step([X(3, 1, -1)], 1, b) == [X(3, 1)]


def test_pullback_rule_signs():
    b = exchange_matrix(Q)
    # b[1][2] = 1 (arrow 2 -> 1): X_2 -> X_2 (1 + X_1^{-1})^{-1}
    assert b[0][1] == 1
    assert x_pullback_step([X(3, 2)], 1, b) == [X(3, 2) / (X(3, 1, -1) + 1)]
    # b[1][3] = -1 (arrow 1 -> 3): X_3 -> X_3 (1 + X_1)
    assert b[0][2] == -1
    assert x_pullback_step([X(3, 3)], 1, b) == [X(3, 3) * (X(3, 1) + 1)]


def test_pullback_step_and_reverse_cancel():
    b = exchange_matrix(Q)
    b1 = mutate_exchange_matrix(b, 1)
    exprs = [X(3, i) for i in range(1, 4)]
    assert x_pullback_step(x_pullback_step(exprs, 1, b), 1, b1) == exprs


def test_y_mutation():
    b = exchange_matrix(Q)
    y = [X(3, i) for i in range(1, 4)]
    out = y_mutate(y, b, 1)
    assert out[0] == X(3, 1, -1)
    Z = [[0] * 3 for _ in range(3)]
    assert y_mutate(y, Z, 2)[0] == y[0]
    assert y_mutate(y_mutate(y, b, 1), mutate_exchange_matrix(b, 1), 1) == y


def test_a_mutation():
    u = [X(3, i) for i in range(1, 4)]
    out = a_mutate(u, Q, 1)
    assert out[0] == (X(3, 2) + X(3, 3)) / X(3, 1)
    lonely = IceQuiver(2, 2, ())
    assert a_mutate([X(2, 1), X(2, 2)], lonely, 1)[0] == X(2, 1).inverse() * 2
    twice = a_mutate(out, mutate_quiver(Q, 1, keep_frozen_arrows=True), 1)
    assert twice[0] == u[0]


def test_optimized_seeds_sl3():
    assert find_optimized_seed(Q, 3).word == ()
    assert find_optimized_seed(Q, 2).word == (1,)
    with pytest.raises(NotFoundWithinDepth):
        find_optimized_seed(Q, 2, depth_max=0)


def test_seed_path_rejects_frozen_index():
    with pytest.raises(ValueError):
        SeedPath(Q, (2,))


def test_lg_sl3():
    W = lg_potential(Q)
    assert W[3] == mono(0, 0, -1)
    assert W[2] == mono(0, -1, 0) + mono(-1, -1, 0)


def test_lg_via_fpoly_sl3():
    qp = gamma_qp(SL3)
    assert lg_potential_via_fpoly(qp, 2) == lg_potential_chart(Q, 2)
    assert lg_potential_via_fpoly(qp, 3) == mono(0, 0, -1)


@pytest.mark.parametrize("ell", [7, 8, 9, 10])
def test_lg_sl5_two_pipelines(ell):
    qp = gamma_qp(SL5)
    assert lg_potential_via_fpoly(qp, ell) == lg_potential_chart(qp.quiver, ell)


@pytest.mark.parametrize("word", reduced_words(4))
def test_coefficients_are_one_and_count_quotients(word):
    for d in range(1, 4):
        qp = gamma_qp(word)
        ell = qp.quiver.labels.index(max(s for s, x in enumerate(word, 1) if x == d)) + 1
        W = lg_potential_chart(qp.quiver, ell)
        assert set(W.terms.values()) == {1}
        P = projective_for_index(word, d)
        assert len(enumerate_thin_quotients(P)) - 1 == len(W.terms)


# properties

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(reduced_words(4)), st.data())
def test_y_mutation_involution(word, data):
    b = exchange_matrix(gamma_qp(word).quiver)
    m = len(b)
    k = data.draw(st.integers(1, 3))
    y = [RationalExpr.var(m, i) for i in range(m)]
    assert y_mutate(y_mutate(y, b, k), mutate_exchange_matrix(b, k), k) == y


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(reduced_words(4)), st.data())
def test_x_pullback_involution(word, data):
    b = exchange_matrix(gamma_qp(word).quiver)
    m = len(b)
    k = data.draw(st.integers(1, 3))
    x = [RationalExpr.var(m, i) for i in range(m)]
    assert x_pullback_step(x_pullback_step(x, k, b), k, mutate_exchange_matrix(b, k)) == x
