"""Shared builders for the test suite."""

import random
from fractions import Fraction

from qpc.qp import mutate_qp
from qpc.rep import DecoratedRep, change_basis, direct_sum, negative_simple, simple, zero_rep
from qpc.typea import gamma_qp

SL3 = (1, 2, 1)
SL4_WORDS_SAMPLE = ((1, 2, 1, 3, 2, 1), (2, 1, 3, 2, 3, 1), (1, 3, 2, 1, 3, 2))
SL5 = (1, 2, 1, 3, 2, 1, 4, 3, 2, 1)


def triangle_qp():
    """Oriented 3-cycle with the cycle as potential (mu_1 of the SL3 quiver)."""
    return mutate_qp(gamma_qp(SL3), 1)


def arrow_module(qp, aid):
    a = qp.quiver.arrow(aid)
    dims = tuple(int(j in (a.t, a.h)) for j in range(1, qp.quiver.m + 1))
    return DecoratedRep(qp, dims, {aid: [[1]]})


def random_invertible(d, rng):
    import qpc.linalg as la

    while True:
        T = [[Fraction(rng.randint(-3, 3)) for _ in range(d)] for _ in range(d)]
        if la.det(T) != 0:
            return T


def random_triangle_rep(rng, max_summands=4):
    """Random decorated rep of the triangle QP: sum of indecomposables, random basis, random v."""
    qp = triangle_qp()
    pieces = [simple(qp, j) for j in range(1, 4)] + [arrow_module(qp, a.id) for a in qp.quiver.arrows]
    R = zero_rep(qp)
    for _ in range(rng.randint(1, max_summands)):
        R = direct_sum(R, rng.choice(pieces))
    for _ in range(rng.randint(0, 2)):
        R = direct_sum(R, negative_simple(qp, rng.randint(1, 3)))
    T = {j: random_invertible(R.dim(j), rng) for j in range(1, 4)}
    return change_basis(R, T)


def rng(seed=0):
    return random.Random(seed)


# Drawn SL5 quiver for the word SL5, as letter -> (tail, head) on word positions.
SL5_DRAWN = {
    "a": (1, 3), "b": (3, 6), "c": (6, 10), "d": (2, 1), "e": (3, 2),
    "f": (5, 3), "g": (6, 5), "h": (9, 6), "i": (2, 5), "j": (5, 9),
    "k": (4, 2), "l": (5, 4), "m": (8, 5), "n": (4, 8), "o": (7, 4),
}
SL5_PRINTED_POTENTIAL = "jgh+ief+nlm-bfg-ade-ike"


def parse_printed_potential(text):
    """Split a printed potential like 'ab+cd-ef' into (sign, letters) pairs."""
    out, sign, cur = [], 1, ""
    for ch in text:
        if ch in "+-":
            if cur:
                out.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        else:
            cur += ch
    if cur:
        out.append((sign, cur))
    return out


def is_closed_walk(letters, arrows):
    """Composition order: the rightmost letter is traversed first."""
    ends = [arrows[c] for c in reversed(letters)]
    return all(ends[i][1] == ends[(i + 1) % len(ends)][0] for i in range(len(ends)))


def cycle_key(edges):
    """Cyclic class of a sequence of (tail, head) pairs."""
    edges = tuple(edges)
    return min(edges[i:] + edges[:i] for i in range(len(edges)))


def edge_potential(qp):
    """Potential as {cyclic class of (tail, head) sequences: coeff}; needs no multi-arrows."""
    amap = qp.quiver.arrow_map()
    out = {}
    for c, cyc in qp.potential.terms:
        key = cycle_key((amap[a].t, amap[a].h) for a in cyc)
        out[key] = out.get(key, 0) + c
    return out


def diagonally_equivalent(qp1, qp2):
    """True if the QPs agree after renaming arrows by endpoints and rescaling arrows by signs."""
    e1 = sorted((a.t, a.h) for a in qp1.quiver.arrows)
    e2 = sorted((a.t, a.h) for a in qp2.quiver.arrows)
    if e1 != e2 or len(set(e1)) != len(e1):
        return False
    s1, s2 = edge_potential(qp1), edge_potential(qp2)
    if s1.keys() != s2.keys():
        return False
    index = {e: i for i, e in enumerate(e1)}
    rows = []
    for key, c in s1.items():
        ratio = s2[key] / c
        if abs(ratio) != 1:
            return False
        mask = 0
        for e in key:
            mask ^= 1 << index[e]
        rows.append((mask, int(ratio < 0)))
    # GF(2) elimination: is there a sign per arrow with the required parity per cycle?
    pivots = []
    for mask, rhs in rows:
        for pm, pr in pivots:
            if mask & (pm & -pm):
                mask, rhs = mask ^ pm, rhs ^ pr
        if mask:
            pivots.append((mask, rhs))
        elif rhs:
            return False
    return True


def dense_projective_dims(qp, ell, D):
    """Dimensions of (kQ / (J + m^{D+1})) e_ell by dense linear algebra.

    J is spanned by lam * d_a(S) * rho over all paths lam, rho; this is an
    oracle independent of the echelon machinery in the library.
    """
    import qpc.linalg as la
    from qpc.qp import cyclic_derivative

    Q = qp.quiver
    outs = {j: [a for a in Q.arrows if a.t == j] for j in range(1, Q.m + 1)}

    def paths_from(v):
        res, frontier = [((), v)], [((), v)]
        for _ in range(D):
            frontier = [((a.id,) + p, a.h) for p, e in frontier for a in outs[e]]
            res += frontier
        return res

    P = paths_from(ell)
    idx = {p: i for i, (p, _) in enumerate(P)}
    rows = []
    for a in Q.arrows:
        d = cyclic_derivative(qp.potential, a.id)
        if not d:
            continue
        for rho, e in P:
            if e != a.h:
                continue
            for lam, _ in paths_from(a.t):
                vec = {}
                for p, c in d.items():
                    q = lam + p + rho
                    if len(q) <= D:
                        vec[q] = vec.get(q, 0) + c
                if any(vec.values()):
                    r = [Fraction(0)] * len(P)
                    for q, c in vec.items():
                        r[idx[q]] += c
                    rows.append(r)
    dims = []
    for v in range(1, Q.m + 1):
        cols = [i for i, (_, e) in enumerate(P) if e == v]
        sub = [[r[i] for i in cols] for r in rows if any(r[i] for i in cols)]
        dims.append(len(cols) - (la.rank(sub) if sub else 0))
    return tuple(dims)


def path_count_dims(Q, ell, reverse=False):
    """Number of paths from ell to each vertex (into ell if reverse); acyclic Q only."""
    counts = [0] * Q.m
    frontier = {ell: 1}
    while frontier:
        nxt = {}
        for v, c in frontier.items():
            counts[v - 1] += c
            for a in Q.arrows:
                src, dst = (a.h, a.t) if reverse else (a.t, a.h)
                if src == v:
                    nxt[dst] = nxt.get(dst, 0) + c
        frontier = nxt
    return tuple(counts)
