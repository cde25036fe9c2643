import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import SL5, SL5_DRAWN
from qpc.quiver import (
    Arrow,
    IceQuiver,
    QuiverError,
    b_matrix,
    exchange_matrix,
    full_subquiver,
    mutate_b_matrix,
    mutate_exchange_matrix,
    mutate_quiver,
    quiver_from_json,
    quiver_to_json,
    validate,
)
from qpc.typea import gamma_quiver

SL3 = IceQuiver.from_edges(3, 1, [("a", 1, 3), ("b", 2, 1)])


def edges(Q):
    return sorted((a.t, a.h) for a in Q.arrows)


def test_sl3_valid():
    assert validate(SL3) == []


def test_loop_rejected():
    Q = IceQuiver.from_edges(2, 1, [("x", 1, 1)])
    assert any(s.startswith("Loop") for s in validate(Q))


def test_frozen_frozen_rejected():
    Q = IceQuiver.from_edges(3, 1, [("x", 2, 3)])
    assert any(s.startswith("FrozenFrozenArrow") for s in validate(Q))


def test_duplicate_ids_rejected():
    Q = IceQuiver.from_edges(2, 2, [("x", 1, 2), ("x", 2, 1)])
    assert any(s.startswith("DuplicateArrowId") for s in validate(Q))


def test_b_matrix_sl3():
    B = b_matrix(SL3)
    assert B[1, 1] == 0
    assert B[2, 1] == -1
    assert B[3, 1] == 1


def test_b_matrix_empty():
    B = b_matrix(IceQuiver(3, 2, ()))
    assert all(x == 0 for row in B.entries for x in row)


def test_gamma_sl3_is_sl3_quiver():
    assert edges(gamma_quiver((1, 2, 1))) == edges(SL3)
    assert b_matrix(gamma_quiver((1, 2, 1))) == b_matrix(SL3)


def test_mutate_sl3():
    M = mutate_quiver(SL3, 1)
    assert edges(M) == [(1, 2), (3, 1)]
    K = mutate_quiver(SL3, 1, keep_frozen_arrows=True)
    assert edges(K) == [(1, 2), (2, 3), (3, 1)]
    assert {a.id for a in K.arrows} == {"a*", "b*", "[a,b]"}


def test_mutate_single_arrow():
    Q = IceQuiver.from_edges(2, 2, [("x", 1, 2)])
    assert edges(mutate_quiver(Q, 1)) == [(2, 1)]


def test_double_mutation_sl5():
    Q = gamma_quiver(SL5)
    assert b_matrix(mutate_quiver(mutate_quiver(Q, 5), 5)) == b_matrix(Q)


def test_mutate_b_matrix_consistent():
    assert mutate_b_matrix(b_matrix(SL3), 1) == b_matrix(mutate_quiver(SL3, 1))
    Z = b_matrix(IceQuiver(3, 2, ()))
    assert mutate_b_matrix(Z, 1) == Z


def test_full_subquiver():
    assert edges(full_subquiver(SL3, [1, 2])) == [(2, 1)]
    assert edges(full_subquiver(SL3, [1, 3])) == [(1, 2)]
    assert full_subquiver(SL3, [1, 2, 3]).arrows == SL3.arrows


def test_gamma_sl5_matches_drawing():
    Q = gamma_quiver(SL5)
    assert Q.frozen() == [7, 8, 9, 10]
    got = sorted((Q.labels[a.t - 1], Q.labels[a.h - 1]) for a in Q.arrows)
    assert got == sorted(SL5_DRAWN.values())


def test_json_roundtrip():
    assert quiver_from_json(quiver_to_json(SL3)).arrows == SL3.arrows
    with pytest.raises(QuiverError):
        quiver_from_json({"m": 2})


# properties

@st.composite
def ice_quivers(draw, max_m=6):
    m = draw(st.integers(2, max_m))
    n = draw(st.integers(1, m))
    pairs = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if i != j and (i <= n or j <= n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=8))
    # drop 2-cycles so the quiver is 2-acyclic
    arrows = []
    for t, h in chosen:
        if any(a.t == h and a.h == t for a in arrows):
            continue
        arrows.append(Arrow(f"x{len(arrows)}", t, h))
    return IceQuiver(m, n, tuple(arrows))


@settings(max_examples=150, deadline=None)
@given(ice_quivers(), st.data())
def test_quiver_mutation_is_involution(Q, data):
    k = data.draw(st.integers(1, Q.n))
    twice = mutate_quiver(mutate_quiver(Q, k), k)
    assert b_matrix(twice) == b_matrix(Q)


@settings(max_examples=150, deadline=None)
@given(ice_quivers(), st.data())
def test_matrix_mutation_tracks_quiver_mutation(Q, data):
    k = data.draw(st.integers(1, Q.n))
    b = exchange_matrix(Q)
    assert mutate_exchange_matrix(b, k) == exchange_matrix(mutate_quiver(Q, k, keep_frozen_arrows=True))
    assert mutate_exchange_matrix(mutate_exchange_matrix(b, k), k) == b
