"""Seeds along the n-regular tree and the Landau-Ginzburg potential.

Charts are addressed by mutation words starting from the initial seed.  The
exchange matrix used throughout is the full skew-symmetric one,
``b[i][j] = #(j -> i) - #(i -> j)``, so mutations never touch frozen indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .qp import QPInstance, restrict_potential
from .quiver import IceQuiver, exchange_matrix, full_subquiver, mutate_exchange_matrix
from .rep import build_projective, dual_f_polynomial
from .symbolic import LaurentExpr, RationalExpr, as_inverse_polynomial, substitute

__all__ = [
    "NotFoundWithinDepth",
    "SeedPath",
    "x_pullback_step",
    "y_mutate",
    "a_mutate",
    "find_optimized_seed",
    "ell_subquiver",
    "lg_potential_chart",
    "lg_potential",
    "lg_potential_via_fpoly",
]


class NotFoundWithinDepth(RuntimeError):
    pass


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def _key(b) -> tuple:
    return tuple(tuple(r) for r in b)


@dataclass(frozen=True)
class SeedPath:
    quiver: IceQuiver
    word: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        for k in self.word:
            if not 1 <= k <= self.quiver.n:
                raise ValueError(f"mutation index {k} is not mutable")

    @cached_property
    def matrices(self) -> list[list[list[int]]]:
        """Exchange matrices B(t_0), ..., B(t_r) along the word."""
        b = exchange_matrix(self.quiver)
        out = [b]
        for k in self.word:
            b = mutate_exchange_matrix(b, k)
            out.append(b)
        return out

    def endpoint(self) -> list[list[int]]:
        return self.matrices[-1]


def x_pullback_step(exprs: Sequence, k: int, b: Sequence[Sequence[int]]) -> list[RationalExpr]:
    """Rewrite expressions in the chart mu_k(t) as expressions in chart t.

    ``b`` is the full exchange matrix of chart t.
    """
    m = len(b)
    X = [RationalExpr.var(m, i) for i in range(m)]
    one = RationalExpr.const(m, 1)
    kk = k - 1
    images = []
    for i in range(m):
        if i == kk:
            images.append(X[kk].inverse())
            continue
        bki = b[kk][i]
        if bki == 0:
            images.append(X[i])
            continue
        inner = one + RationalExpr.var(m, kk, -_sgn(bki))
        images.append(X[i] * inner ** (-bki))
    return [substitute(e, images) for e in exprs]


def y_mutate(y: Sequence, b: Sequence[Sequence[int]], k: int) -> list[RationalExpr]:
    """y_k -> y_k^{-1}, y_j -> y_j (1 + y_k^{-sgn b_jk})^{-b_jk}."""
    kk = k - 1
    y = [e if isinstance(e, RationalExpr) else RationalExpr.from_laurent(e) for e in y]
    out = []
    for j, yj in enumerate(y):
        if j == kk:
            out.append(yj.inverse())
            continue
        bjk = b[j][kk]
        if bjk == 0:
            out.append(yj)
            continue
        base = y[kk] if -_sgn(bjk) > 0 else y[kk].inverse()
        out.append(yj * (base + 1) ** (-bjk))
    return out


def a_mutate(u: Sequence, Q: IceQuiver, k: int) -> list[RationalExpr]:
    u = [e if isinstance(e, RationalExpr) else RationalExpr.from_laurent(e) for e in u]
    m = len(u)
    p_in = RationalExpr.const(m, 1)
    p_out = RationalExpr.const(m, 1)
    for a in Q.arrows:
        if a.h == k:
            p_in = p_in * u[a.t - 1]
        if a.t == k:
            p_out = p_out * u[a.h - 1]
    out = list(u)
    out[k - 1] = (p_in + p_out) / u[k - 1]
    return out


def _is_sink(b, ell: int, n: int) -> bool:
    # no arrow from ell to a mutable vertex; arrows between frozen vertices do not count
    return all(b[ell - 1][j] >= 0 for j in range(n))


def find_optimized_seed(Q: IceQuiver, ell: int, depth_max: int = 10) -> SeedPath:
    """Shortest mutation word after which ``ell`` is a sink (BFS, labelled B-matrices)."""
    if not Q.n < ell <= Q.m:
        raise ValueError(f"vertex {ell} is not frozen")
    start = exchange_matrix(Q)
    if _is_sink(start, ell, Q.n):
        return SeedPath(Q, ())
    seen = {_key(start)}
    queue = deque([(start, ())])
    while queue:
        b, word = queue.popleft()
        if len(word) >= depth_max:
            continue
        for k in range(1, Q.n + 1):
            if word and word[-1] == k:
                continue
            nb = mutate_exchange_matrix(b, k)
            key = _key(nb)
            if key in seen:
                continue
            seen.add(key)
            w = word + (k,)
            if _is_sink(nb, ell, Q.n):
                return SeedPath(Q, w)
            queue.append((nb, w))
    raise NotFoundWithinDepth(f"no optimized seed for {ell} within depth {depth_max}")


def ell_subquiver(Q: IceQuiver, ell: int) -> IceQuiver:
    """Full subquiver on the mutable vertices and the frozen vertex ``ell``."""
    return full_subquiver(Q, list(range(1, Q.n + 1)) + [ell])


def _embed(f: LaurentExpr, Q: IceQuiver, ell: int) -> LaurentExpr:
    positions = list(range(Q.n)) + [ell - 1]
    return f.embed(Q.m, positions)


def lg_potential_chart(Q: IceQuiver, ell: int, depth_max: int = 10) -> LaurentExpr:
    """W_ell in the initial chart, by pulling X_ell^{-1} back from an optimized chart."""
    sub = ell_subquiver(Q, ell)
    le = sub.m
    path = find_optimized_seed(sub, le, depth_max)
    expr = [RationalExpr.var(sub.m, le - 1, -1)]
    mats = path.matrices
    for step in range(len(path.word) - 1, -1, -1):
        expr = x_pullback_step(expr, path.word[step], mats[step])
    w = as_inverse_polynomial(expr[0])
    return _embed(w, Q, ell)


def lg_potential(Q: IceQuiver, depth_max: int = 10) -> dict[int, LaurentExpr]:
    return {ell: lg_potential_chart(Q, ell, depth_max) for ell in Q.frozen()}


def lg_potential_via_fpoly(qp: QPInstance, ell: int, d_max: int = 40) -> LaurentExpr:
    """F-dual of the projective at ell over the restricted QP, at u = X^{-1}, minus 1."""
    Q = qp.quiver
    sub = ell_subquiver(Q, ell)
    P = build_projective(restrict_potential(qp, sub), sub.m, d_max)
    fd = dual_f_polynomial(P)
    w = LaurentExpr(sub.m, {tuple(-x for x in e): c for e, c in fd.terms.items()}) - 1
    return _embed(w, Q, ell)


def total_potential(parts: Mapping[int, LaurentExpr]) -> LaurentExpr:
    vals = list(parts.values())
    out = vals[0] if vals else None
    for v in vals[1:]:
        out = out + v
    return out
