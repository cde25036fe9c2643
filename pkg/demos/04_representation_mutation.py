"""Decorated representations of the oriented triangle with its cycle as potential.

Random modules are direct sums of indecomposables in a random basis.  Mutation
at vertex 1 is an involution up to isomorphism, and the h-vector changes by the
g-vector.
"""

import random
from fractions import Fraction

import qpc.linalg as la
from qpc.qp import mutate_qp
from qpc.rep import (
    DecoratedRep,
    change_basis,
    direct_sum,
    g_vector,
    h_vector,
    is_isomorphic,
    mutate_rep,
    negative_simple,
    simple,
    zero_rep,
)
from qpc.typea import gamma_qp

qp = mutate_qp(gamma_qp((1, 2, 1)), 1)
print("triangle:", [(a.id, a.t, a.h) for a in qp.quiver.arrows])
print("S =", qp.potential.to_string())


def arrow_module(aid):
    a = qp.quiver.arrow(aid)
    dims = tuple(int(j in (a.t, a.h)) for j in (1, 2, 3))
    return DecoratedRep(qp, dims, {aid: [[1]]})


def random_invertible(d, rng):
    while True:
        T = [[Fraction(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        if la.det(T) != 0:
            return T


rng = random.Random(7)
pieces = [simple(qp, j) for j in (1, 2, 3)] + [arrow_module(a.id) for a in qp.quiver.arrows]
for trial in range(6):
    R = zero_rep(qp)
    for _ in range(rng.randint(1, 4)):
        R = direct_sum(R, rng.choice(pieces))
    if rng.random() < 0.5:
        R = direct_sum(R, negative_simple(qp, 1))
    R = change_basis(R, {j: random_invertible(R.dim(j), rng) for j in (1, 2, 3)})
    M = mutate_rep(qp, R, 1)
    back = mutate_rep(mutate_qp(qp, 1), M, 1)
    print(
        f"dims {R.dims} v {R.v} -> dims {M.dims} v {M.v};"
        f" h1 - h1' = {h_vector(R)[0] - h_vector(M)[0]}, g1 = {g_vector(R)[0]},"
        f" involution: {is_isomorphic(back, R)}"
    )
