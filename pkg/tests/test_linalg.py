from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import qpc.linalg as la

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_small_cases():
    A = [[1, 2], [2, 4]]
    assert la.rank(A) == 1
    assert la.det([[2, 1], [1, 1]]) == 1
    assert la.inverse([[2, 1], [1, 1]]) == [[1, -1], [-1, 2]]


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_nullity(A):
    cols = len(A[0])
    null = la.nullspace(A, cols)
    assert la.rank(A) + len(null) == cols
    for v in null:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in A)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_inverse_when_square_and_regular(A):
    if len(A) != len(A[0]) or la.det(A) == 0:
        return
    n = len(A)
    assert la.matmul(A, la.inverse(A), inner=n, cols=n) == la.identity(n)
