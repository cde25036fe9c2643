"""Decorated representations of Jacobian algebras.

A representation stores, for every arrow ``a: t -> h``, a matrix of shape
``dims[h] x dims[t]`` (lists of Fraction rows).  Paths act by matrix products
in the order they are written, so ``(a1, ..., ad)`` acts as ``A1 @ ... @ Ad``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg as la
from .qp import (
    PathLC,
    QPInstance,
    cyclic_derivative,
    mutate_qp_with_trace,
    second_cyclic_derivative,
)
from .quiver import IceQuiver, TwoCycleAtK, premutation_arrows
from .symbolic import LaurentExpr

__all__ = [
    "DecoratedRep",
    "DimensionNotStabilized",
    "NotThin",
    "check_module",
    "build_projective",
    "build_projective_graded",
    "build_projective_truncated",
    "build_injective",
    "dualize",
    "mutate_rep",
    "premutate_rep",
    "is_isomorphic",
    "hom_space",
    "g_vector",
    "h_vector",
    "radical",
    "enumerate_thin_quotients",
    "dual_f_polynomial",
    "f_polynomial",
    "simple",
    "negative_simple",
    "direct_sum",
    "change_basis",
    "zero_rep",
    "rep_to_json",
    "rep_from_json",
]


class DimensionNotStabilized(RuntimeError):
    pass


class NotThin(ValueError):
    pass


class ModuleTransportError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class DecoratedRep:
    qp: QPInstance
    dims: tuple[int, ...]
    maps: Mapping[str, list]
    v: tuple[int, ...] = ()
    basis: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if not self.v:
            object.__setattr__(self, "v", (0,) * len(self.dims))
        object.__setattr__(self, "v", tuple(self.v))
        maps = {}
        for a in self.qp.quiver.arrows:
            m = self.maps.get(a.id)
            if m is None:
                m = la.zeros(self.dims[a.h - 1], self.dims[a.t - 1])
            maps[a.id] = la.to_fraction(m)
        object.__setattr__(self, "maps", maps)

    @property
    def quiver(self) -> IceQuiver:
        return self.qp.quiver

    def dim(self, j: int) -> int:
        return self.dims[j - 1]

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_thin(self) -> bool:
        return all(d <= 1 for d in self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims) and not any(self.v)

    def arrow_matrix(self, aid: str) -> list:
        return self.maps[aid]

    def __repr__(self):
        return f"DecoratedRep(dims={self.dims}, v={self.v})"


# evaluation helpers

def _eval_path(R: DecoratedRep, path: Sequence[str], src: int, overrides: Mapping | None = None) -> list:
    """Matrix of a path starting at vertex ``src``."""
    amap = R.quiver.arrow_map()
    cur = la.identity(R.dim(src))
    cur_dim = R.dim(src)
    for x in reversed(path):
        a = amap[x]
        m = overrides[x] if overrides and x in overrides else R.maps[x]
        cur = la.matmul(m, cur, inner=cur_dim, cols=R.dim(src))
        cur_dim = R.dim(a.h)
    return cur


def _eval_lc(R: DecoratedRep, lc: PathLC, src: int, dst: int, overrides: Mapping | None = None) -> list:
    out = la.zeros(R.dim(dst), R.dim(src))
    for path, c in lc.items():
        m = _eval_path(R, path, src, overrides)
        out = la.add(out, la.scale(m, c))
    return out


def _subspace_basis(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    if not vectors:
        return []
    n = len(vectors[0])
    mat = la.columns_to_matrix(vectors, n)
    return la.column_space(mat)


def check_module(R: DecoratedRep) -> list[str]:
    issues = []
    Q = R.quiver
    if len(R.dims) != Q.m or len(R.v) != Q.m:
        return [f"dimension vector has length {len(R.dims)}, expected {Q.m}"]
    if any(d < 0 for d in R.dims) or any(x < 0 for x in R.v):
        issues.append("negative dimension or decoration")
    for a in Q.arrows:
        m = R.maps[a.id]
        r, c = la.shape(m, R.dim(a.t))
        if (r, c) != (R.dim(a.h), R.dim(a.t)) and not (R.dim(a.h) == 0 and r == 0):
            issues.append(f"arrow {a.id} has shape {r}x{c}, expected {R.dim(a.h)}x{R.dim(a.t)}")
    if issues:
        return issues
    for a in Q.arrows:
        d = cyclic_derivative(R.qp.potential, a.id)
        if d and not la.is_zero(_eval_lc(R, d, a.h, a.t)):
            issues.append(f"relation d_{a.id}(S) does not vanish")
    # nilpotency: iterate U -> sum_a a(U) until zero or stuck
    layer = {j: [[Fraction(int(i == p)) for i in range(R.dim(j))] for p in range(R.dim(j))] for j in range(1, Q.m + 1)}
    for _ in range(R.total_dim() + 1):
        if not any(layer.values()):
            break
        nxt: dict = {j: [] for j in range(1, Q.m + 1)}
        for a in Q.arrows:
            m = R.maps[a.id]
            for vec in layer[a.t]:
                img = [sum((m[i][p] * vec[p] for p in range(len(vec))), Fraction(0)) for i in range(R.dim(a.h))]
                if any(img):
                    nxt[a.h].append(img)
        layer = {j: _subspace_basis(vs) for j, vs in nxt.items()}
    if any(layer.values()):
        issues.append("representation is not nilpotent")
    return issues


# projectives

def _out_arrows_by_vertex(Q: IceQuiver) -> dict[int, list]:
    outs: dict[int, list] = {j: [] for j in range(1, Q.m + 1)}
    for a in Q.arrows:
        outs[a.t].append(a)
    return outs


def build_projective_graded(qp: QPInstance, ell: int, d_max: int = 60) -> DecoratedRep:
    """Layer-by-layer construction for a homogeneous potential (or S = 0)."""
    Q = qp.quiver
    S = qp.potential
    if not S.is_homogeneous():
        raise ValueError("graded construction needs a homogeneous potential")
    s = S.max_length()
    outs = _out_arrows_by_vertex(Q)
    derivs = []
    if s:
        for a in Q.arrows:
            d = cyclic_derivative(S, a.id)
            if d:
                derivs.append((a, d))
    layers: list[list[tuple[int, tuple]]] = [[(ell, ())]]
    actions: list[dict] = []
    while True:
        d = len(layers)
        if d > d_max:
            raise DimensionNotStabilized(f"projective at {ell} still growing at degree {d_max}")
        prev = layers[-1]
        gens = [(x.id, j) for j, (e, _) in enumerate(prev) for x in outs[e]]
        gidx = {g: i for i, g in enumerate(gens)}
        rels = []
        if derivs and d >= s - 1:
            base = layers[d - s + 1]
            for a, lc in derivs:
                for r_idx, (e, _) in enumerate(base):
                    if e != a.h:
                        continue
                    vec = [Fraction(0)] * len(gens)
                    for path, c in lc.items():
                        cur = {r_idx: Fraction(1)}
                        lvl = d - s + 1
                        for x in reversed(path[1:]):
                            nxt: dict = {}
                            for i, cv in cur.items():
                                for jj, w in actions[lvl].get((x, i), {}).items():
                                    nxt[jj] = nxt.get(jj, 0) + cv * w
                            cur = {i: w for i, w in nxt.items() if w}
                            lvl += 1
                        for i, cv in cur.items():
                            vec[gidx[(path[0], i)]] += c * cv
                    if any(vec):
                        rels.append(vec)
        if rels:
            red, piv = la.rref(rels)
        else:
            red, piv = [], []
        pivset = set(piv)
        free = [i for i in range(len(gens)) if i not in pivset]
        pos = {g: p for p, g in enumerate(free)}
        act: dict = {}
        for i, g in enumerate(gens):
            if i in pos:
                act[g] = {pos[i]: Fraction(1)}
        for row, p in zip(red, piv):
            act[gens[p]] = {pos[f]: -row[f] for f in free if row[f]}
        actions.append(act)
        layer = []
        amap = Q.arrow_map()
        for f in free:
            x, j = gens[f]
            layer.append((amap[x].h, (x,) + prev[j][1]))
        if not layer:
            break
        layers.append(layer)
    return _assemble_graded(qp, layers, actions)


def _assemble_graded(qp: QPInstance, layers, actions) -> DecoratedRep:
    Q = qp.quiver
    index: dict = {}
    per_vertex: dict[int, list] = {j: [] for j in range(1, Q.m + 1)}
    for d, layer in enumerate(layers):
        for i, (e, path) in enumerate(layer):
            index[(d, i)] = (e, len(per_vertex[e]))
            per_vertex[e].append(path)
    dims = tuple(len(per_vertex[j]) for j in range(1, Q.m + 1))
    maps = {a.id: la.zeros(dims[a.h - 1], dims[a.t - 1]) for a in Q.arrows}
    for d, layer in enumerate(layers):
        for i, (e, _) in enumerate(layer):
            for a in Q.arrows:
                if a.t != e:
                    continue
                img = actions[d].get((a.id, i), {}) if d < len(actions) else {}
                _, col = index[(d, i)]
                for jj, w in img.items():
                    e2, row = index[(d + 1, jj)]
                    maps[a.id][row][col] = w
    basis = tuple(tuple(per_vertex[j]) for j in range(1, Q.m + 1))
    return DecoratedRep(qp, dims, maps, basis=basis)


def _path_order(p: tuple):
    return (len(p), p)


class _Echelon:
    """Sparse row echelon form; the leading term of a row is its largest path."""

    def __init__(self):
        self.rows: dict = {}

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        while v:
            lead = max(v, key=_path_order)
            row = self.rows.get(lead)
            if row is None:
                return v
            c = v[lead]
            for k, x in row.items():
                val = v.get(k, 0) - c * x
                if val:
                    v[k] = val
                else:
                    v.pop(k, None)
        return v

    def insert(self, vec: dict) -> dict | None:
        v = self.reduce(vec)
        if not v:
            return None
        lead = max(v, key=_path_order)
        c = v[lead]
        row = {k: x / c for k, x in v.items()}
        self.rows[lead] = row
        return row

    def normal_form(self, vec: dict) -> dict:
        v = dict(vec)
        out: dict = {}
        while v:
            lead = max(v, key=_path_order)
            c = v.pop(lead)
            row = self.rows.get(lead)
            if row is None:
                out[lead] = out.get(lead, 0) + c
                continue
            for k, x in row.items():
                if k == lead:
                    continue
                val = v.get(k, 0) - c * x
                if val:
                    v[k] = val
                else:
                    v.pop(k, None)
        return {k: x for k, x in out.items() if x}


def _truncated_quotient(ell: int, D: int, derivs, outs):
    """Echelon form of (J + paths longer than D) e_ell inside the paths from ell."""
    paths = [()]
    ends = {(): ell}
    frontier = [()]
    for _ in range(D):
        nxt = []
        for p in frontier:
            for x in outs[ends[p]]:
                q = (x.id,) + p
                ends[q] = x.h
                nxt.append(q)
        paths.extend(nxt)
        frontier = nxt
    ech = _Echelon()
    queue = []
    for a, lc in derivs:
        for rho in paths:
            if ends[rho] != a.h:
                continue
            vec: dict = {}
            for p, c in lc.items():
                q = p + rho
                if len(q) <= D:
                    vec[q] = vec.get(q, 0) + c
            vec = {k: x for k, x in vec.items() if x}
            if vec:
                row = ech.insert(vec)
                if row is not None:
                    queue.append(row)
    # close under left multiplication by arrows
    while queue:
        row = queue.pop()
        end = ends[max(row, key=_path_order)]
        for x in outs[end]:
            vec = {(x.id,) + k: c for k, c in row.items() if len(k) + 1 <= D}
            if vec:
                new = ech.insert(vec)
                if new is not None:
                    queue.append(new)
    free = [p for p in paths if p not in ech.rows]
    return free, ends, ech


def build_projective_truncated(qp: QPInstance, ell: int, d_max: int = 40, window: int = 3) -> DecoratedRep:
    """Paths from ell modulo the Jacobian relations and all paths longer than D.

    D grows until the dimension vector has not changed for ``window`` consecutive
    degrees.  One unchanged step already means every path of length D is congruent
    to an element of J modulo longer paths, so the truncation is exact from there on.
    """
    Q = qp.quiver
    outs = _out_arrows_by_vertex(Q)
    derivs = []
    for a in Q.arrows:
        d = cyclic_derivative(qp.potential, a.id)
        if d:
            derivs.append((a, d))
    history = []
    for D in range(0, d_max + 1):
        free, ends, ech = _truncated_quotient(ell, D, derivs, outs)
        dims = tuple(sum(1 for p in free if ends[p] == j) for j in range(1, Q.m + 1))
        history.append(dims)
        if len(history) > window and len(set(history[-window - 1:])) == 1:
            return _assemble_truncated(qp, free, ends, ech, D)
    raise DimensionNotStabilized(f"projective at {ell} not stabilized by degree {d_max}")


def _assemble_truncated(qp: QPInstance, free: list, ends: dict, ech: _Echelon, D: int) -> DecoratedRep:
    Q = qp.quiver
    free = sorted(free, key=_path_order)
    per_vertex: dict[int, list] = {j: [] for j in range(1, Q.m + 1)}
    pos = {}
    for p in free:
        pos[p] = (ends[p], len(per_vertex[ends[p]]))
        per_vertex[ends[p]].append(p)
    dims = tuple(len(per_vertex[j]) for j in range(1, Q.m + 1))
    maps = {a.id: la.zeros(dims[a.h - 1], dims[a.t - 1]) for a in Q.arrows}
    for p in free:
        e, col = pos[p]
        for a in Q.arrows:
            if a.t != e:
                continue
            q = (a.id,) + p
            if len(q) > D:
                continue
            for k, c in ech.normal_form({q: Fraction(1)}).items():
                _, row = pos[k]
                maps[a.id][row][col] = c
    basis = tuple(tuple(per_vertex[j]) for j in range(1, Q.m + 1))
    return DecoratedRep(qp, dims, maps, basis=basis)


def build_projective(qp: QPInstance, ell: int, d_max: int = 40) -> DecoratedRep:
    if not 1 <= ell <= qp.quiver.m:
        raise ValueError(f"vertex {ell} out of range")
    if qp.potential.is_homogeneous():
        return build_projective_graded(qp, ell, d_max)
    return build_projective_truncated(qp, ell, d_max)


def dualize(R: DecoratedRep) -> DecoratedRep:
    maps = {aid: la.transpose(m, R.dims[R.quiver.arrow(aid).t - 1]) for aid, m in R.maps.items()}
    return DecoratedRep(R.qp.opposite(), R.dims, maps, R.v)


def build_injective(qp: QPInstance, ell: int, d_max: int = 40) -> DecoratedRep:
    return dualize(build_projective(qp.opposite(), ell, d_max))


# small constructors

def zero_rep(qp: QPInstance) -> DecoratedRep:
    return DecoratedRep(qp, (0,) * qp.quiver.m, {})


def simple(qp: QPInstance, k: int) -> DecoratedRep:
    dims = tuple(int(j == k) for j in range(1, qp.quiver.m + 1))
    return DecoratedRep(qp, dims, {})


def negative_simple(qp: QPInstance, k: int) -> DecoratedRep:
    v = tuple(int(j == k) for j in range(1, qp.quiver.m + 1))
    return DecoratedRep(qp, (0,) * qp.quiver.m, {}, v)


def direct_sum(R1: DecoratedRep, R2: DecoratedRep) -> DecoratedRep:
    Q = R1.quiver
    dims = tuple(a + b for a, b in zip(R1.dims, R2.dims))
    maps = {}
    for a in Q.arrows:
        m = la.zeros(dims[a.h - 1], dims[a.t - 1])
        m1, m2 = R1.maps[a.id], R2.maps[a.id]
        h1, t1 = R1.dim(a.h), R1.dim(a.t)
        for i, row in enumerate(m1):
            for j, x in enumerate(row):
                m[i][j] = x
        for i, row in enumerate(m2):
            for j, x in enumerate(row):
                m[h1 + i][t1 + j] = x
        maps[a.id] = m
    return DecoratedRep(R1.qp, dims, maps, tuple(a + b for a, b in zip(R1.v, R2.v)))


def change_basis(R: DecoratedRep, T: Mapping[int, list]) -> DecoratedRep:
    """Conjugate by invertible matrices T[j] at each vertex: A -> T_h A T_t^{-1}."""
    Q = R.quiver
    inv = {j: la.inverse(T[j]) if R.dim(j) else [] for j in range(1, Q.m + 1)}
    maps = {}
    for a in Q.arrows:
        m = la.matmul(T[a.h], R.maps[a.id], inner=R.dim(a.h), cols=R.dim(a.t)) if R.dim(a.h) else []
        maps[a.id] = la.matmul(m, inv[a.t], inner=R.dim(a.t), cols=R.dim(a.t)) if R.dim(a.h) else []
    return DecoratedRep(R.qp, R.dims, maps, R.v)


# mutation

def _block_cols(blocks: list[list], rows: int, widths: list[int]) -> list:
    """Horizontal concatenation [B1 | B2 | ...] with known widths."""
    return [sum((list(b[i]) if b else [Fraction(0)] * w for b, w in zip(blocks, widths)), []) for i in range(rows)]


def _triangle(R: DecoratedRep, k: int):
    """alpha, beta, gamma at vertex k with the in/out arrow lists and offsets."""
    Q = R.quiver
    S = R.qp.potential
    ins, outs = Q.in_arrows(k), Q.out_arrows(k)
    din = [R.dim(a.t) for a in ins]
    dout = [R.dim(b.h) for b in outs]
    dk = R.dim(k)
    alpha = _block_cols([R.maps[a.id] for a in ins], dk, din)
    beta = [row for b in outs for row in R.maps[b.id]]
    Din, Dout = sum(din), sum(dout)
    gamma = la.zeros(Din, Dout)
    ro = 0
    for a, da in zip(ins, din):
        co = 0
        for b, db in zip(outs, dout):
            lc = second_cyclic_derivative(S, b.id, a.id)
            if lc and da and db:
                blk = _eval_lc(R, lc, b.h, a.t)
                for i in range(da):
                    for j in range(db):
                        gamma[ro + i][co + j] = blk[i][j]
            co += db
        ro += da
    return ins, outs, din, dout, alpha, beta, gamma


def _kernel(mat: list, cols: int) -> list[list[Fraction]]:
    return la.nullspace(mat, cols) if cols else []


def _rank(mat: list) -> int:
    return la.rank(mat) if mat and mat[0] else 0


def _extend_basis(base: list[list], candidates: list[list], dim: int) -> list[list]:
    """Vectors from ``candidates`` completing ``base`` to a basis of their span (pivot choice)."""
    if not candidates:
        return []
    cols = base + candidates
    mat = la.columns_to_matrix(cols, dim)
    _, piv = la.rref(mat)
    return [candidates[p - len(base)] for p in piv if p >= len(base)]


def premutate_rep(R: DecoratedRep, k: int, pre_qp: QPInstance) -> DecoratedRep:
    Q = R.quiver
    if Q.has_two_cycle_at(k):
        raise TwoCycleAtK(f"2-cycle through vertex {k}")
    ins, outs, din, dout, alpha, beta, gamma = _triangle(R, k)
    Din, Dout, dk = sum(din), sum(dout), R.dim(k)
    # coker beta: complement of im beta spanned by standard vectors
    im_beta = la.column_space(beta) if Dout and dk else []
    std = [[Fraction(int(i == j)) for i in range(Dout)] for j in range(Dout)]
    comp = _extend_basis(im_beta, std, Dout)
    pc = len(comp)
    if Dout:
        T = la.columns_to_matrix(im_beta + comp, Dout)
        proj = la.inverse(T)[len(im_beta):]
    else:
        proj = []
    gamma_bar = la.columns_to_matrix([[sum((gamma[i][j] * c[j] for j in range(Dout)), Fraction(0)) for i in range(Din)] for c in comp], Din)
    # ker alpha / im gamma via a pivot-chosen section
    ker_alpha = _kernel(alpha, Din) if dk else [[Fraction(int(i == j)) for i in range(Din)] for j in range(Din)]
    im_gamma = la.column_space(gamma) if Din and Dout else []
    sigma = _extend_basis(im_gamma, ker_alpha, Din)
    q = len(sigma)
    vk = R.v[k - 1]
    new_dk = pc + q + vk
    # decoration: dim ker beta - dim(ker beta cap im alpha)
    ker_beta = _kernel(beta, dk) if Dout else [[Fraction(int(i == j)) for i in range(dk)] for j in range(dk)]
    im_alpha = la.column_space(alpha) if dk and Din else []
    span = len(ker_beta) + len(im_alpha)
    both = la.rank(la.columns_to_matrix(ker_beta + im_alpha, dk)) if span and dk else 0
    new_vk = len(ker_beta) - (span - both)
    dims = list(R.dims)
    dims[k - 1] = new_dk
    v = list(R.v)
    v[k - 1] = new_vk
    maps = {}
    for a in Q.arrows:
        if k not in (a.t, a.h):
            maps[a.id] = R.maps[a.id]
    # beta_bar = [gamma_bar, sigma, 0]: M_k-bar -> M_in, rows split by in-arrows
    beta_bar = [list(gamma_bar[i]) + [s[i] for s in sigma] + [Fraction(0)] * vk for i in range(Din)]
    alpha_bar = [[-x for x in row] for row in proj] + [[Fraction(0)] * Dout for _ in range(q + vk)]
    names = _premutation_names(Q, k)
    ro = 0
    for a, da in zip(ins, din):
        maps[names["rev"][a.id]] = [beta_bar[ro + i] for i in range(da)]
        ro += da
    co = 0
    for b, db in zip(outs, dout):
        maps[names["rev"][b.id]] = [row[co:co + db] for row in alpha_bar]
        co += db
    for b in outs:
        for a in ins:
            prod = la.matmul(R.maps[b.id], R.maps[a.id], inner=dk, cols=R.dim(a.t)) if R.dim(b.h) else []
            maps[names["comp"][(b.id, a.id)]] = prod
    return DecoratedRep(pre_qp, tuple(dims), maps, tuple(v))


def _premutation_names(Q: IceQuiver, k: int) -> dict:
    """Reversed and composite arrow names, produced by the same naming rule as the quiver."""
    arrows, hooks = premutation_arrows(Q, k)
    at_k = Q.in_arrows(k) + Q.out_arrows(k)
    # the reversed arrows come last, in the order ins + outs
    rev = {x.id: y.id for x, y in zip(at_k, arrows[len(arrows) - len(at_k):])}
    comp = {(a.id, b.id): ab.id for a, b, _, _, ab in hooks}
    return {"rev": rev, "comp": comp}


def _apply_trace(R: DecoratedRep, trace, final_qp: QPInstance) -> DecoratedRep:
    Q = R.quiver
    amap = Q.arrow_map()
    maps = dict(R.maps)
    for target, h in trace.steps:
        a = amap[target]
        h = dict(h)
        old = maps[target]
        cur = old
        work = DecoratedRep(R.qp, R.dims, maps, R.v)
        for _ in range(R.total_dim() + 2):
            over = {target: cur}
            hv = _eval_lc(work, h, a.t, a.h, over) if h else la.zeros(R.dim(a.h), R.dim(a.t))
            nxt = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(old, hv)]
            if nxt == cur:
                break
            cur = nxt
        else:
            raise ModuleTransportError(f"substitution for {target} did not converge")
        maps[target] = cur
    for aid in trace.removed:
        if not la.is_zero(maps[aid]):
            raise ModuleTransportError(f"trivial arrow {aid} acts nontrivially; raise the reduction bound")
    kept = {a.id: maps[a.id] for a in final_qp.quiver.arrows}
    return DecoratedRep(final_qp, R.dims, kept, R.v)


def mutate_rep(qp: QPInstance, R: DecoratedRep, k: int, d_red: int | None = None) -> DecoratedRep:
    if R.qp != qp:
        raise ValueError("representation lives over a different QP")
    pre, trace, red = mutate_qp_with_trace(qp, k, d_red)
    M = premutate_rep(R, k, pre)
    return _apply_trace(M, trace, red)


# homomorphisms and isomorphism

def hom_space(R1: DecoratedRep, R2: DecoratedRep) -> list[dict]:
    """Basis of Hom(R1, R2) as dicts vertex -> matrix (dims2 x dims1)."""
    Q = R1.quiver
    offs = {}
    n = 0
    for j in range(1, Q.m + 1):
        offs[j] = n
        n += R2.dim(j) * R1.dim(j)

    def var(j, r, c):
        return offs[j] + r * R1.dim(j) + c

    rows = []
    for a in Q.arrows:
        A1, A2 = R1.maps[a.id], R2.maps[a.id]
        h, t = a.h, a.t
        # (T_h A1 - A2 T_t)[r][c] = 0 for r < d2(h), c < d1(t)
        for r in range(R2.dim(h)):
            for c in range(R1.dim(t)):
                eq = {}
                for p in range(R1.dim(h)):
                    x = A1[p][c]
                    if x:
                        key = var(h, r, p)
                        eq[key] = eq.get(key, 0) + x
                for p in range(R2.dim(t)):
                    x = A2[r][p]
                    if x:
                        key = var(t, p, c)
                        eq[key] = eq.get(key, 0) - x
                eq = {k2: x for k2, x in eq.items() if x}
                if eq:
                    row = [Fraction(0)] * n
                    for k2, x in eq.items():
                        row[k2] = Fraction(x)
                    rows.append(row)
    basis = la.nullspace(rows, n) if n else []
    out = []
    for vec in basis:
        T = {}
        for j in range(1, Q.m + 1):
            T[j] = [[vec[var(j, r, c)] for c in range(R1.dim(j))] for r in range(R2.dim(j))]
        out.append(T)
    return out


def is_isomorphic(R1: DecoratedRep, R2: DecoratedRep, trials: int = 8, rng: random.Random | None = None) -> bool:
    """Randomized test; a false negative has probability zero over random rationals."""
    if R1.qp != R2.qp:
        raise ValueError("representations over different QPs")
    if R1.dims != R2.dims or R1.v != R2.v:
        return False
    h12 = hom_space(R1, R2)
    h21 = hom_space(R2, R1)
    h11 = hom_space(R1, R1)
    if not (len(h12) == len(h21) == len(h11)):
        return False
    if R1.total_dim() == 0:
        return True
    rng = rng or random.Random(0)
    Q = R1.quiver
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in h12]
        ok = True
        for j in range(1, Q.m + 1):
            d = R1.dim(j)
            if not d:
                continue
            T = la.zeros(d, d)
            for c, B in zip(coeffs, h12):
                for r in range(d):
                    for s in range(d):
                        T[r][s] += c * B[j][r][s]
            if la.det(T) == 0:
                ok = False
                break
        if ok:
            return True
    return False


# g- and h-vectors

def _vertex_maps(R: DecoratedRep, j: int):
    _, _, din, dout, alpha, beta, gamma = _triangle(R, j)
    return sum(din), sum(dout), alpha, beta, gamma


def g_vector(R: DecoratedRep) -> tuple[int, ...]:
    out = []
    for j in range(1, R.quiver.m + 1):
        Din, Dout, _, _, gamma = _vertex_maps(R, j)
        ker_gamma = Dout - (_rank(gamma) if Din and Dout else 0)
        out.append(ker_gamma - R.dim(j) + R.v[j - 1])
    return tuple(out)


def h_vector(R: DecoratedRep) -> tuple[int, ...]:
    out = []
    for j in range(1, R.quiver.m + 1):
        Din, Dout, _, beta, _ = _vertex_maps(R, j)
        ker_beta = R.dim(j) - (_rank(beta) if Dout and R.dim(j) else 0)
        out.append(-ker_beta)
    return tuple(out)


# radical and thin quotients

def submodule(R: DecoratedRep, spaces: Mapping[int, list[list]]) -> DecoratedRep:
    """Restriction of R to arrow-stable subspaces (given by column bases)."""
    Q = R.quiver
    dims = tuple(len(spaces[j]) for j in range(1, Q.m + 1))
    maps = {}
    for a in Q.arrows:
        src, dst = spaces[a.t], spaces[a.h]
        if not src or not dst:
            maps[a.id] = la.zeros(len(dst), len(src))
            continue
        A = R.maps[a.id]
        images = [[sum((A[i][p] * col[p] for p in range(len(col))), Fraction(0)) for i in range(R.dim(a.h))] for col in src]
        basis = la.columns_to_matrix(dst, R.dim(a.h))
        sol = la.solve(basis, la.columns_to_matrix(images, R.dim(a.h)))
        if sol is None:
            raise ValueError(f"subspace is not stable under {a.id}")
        maps[a.id] = sol
    return DecoratedRep(R.qp, dims, maps)


def radical(R: DecoratedRep) -> DecoratedRep:
    Q = R.quiver
    imgs: dict[int, list] = {j: [] for j in range(1, Q.m + 1)}
    for a in Q.arrows:
        A = R.maps[a.id]
        if R.dim(a.h) and R.dim(a.t):
            imgs[a.h].extend(la.column_space(A))
    spaces = {j: _subspace_basis(v) for j, v in imgs.items()}
    return submodule(R, spaces)


def _closed_sets(support: list[int], succ: Mapping[int, set]) -> list[frozenset]:
    """All subsets of ``support`` closed under ``succ``."""
    order = list(support)
    closure = {}
    for v in order:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in succ.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        closure[v] = frozenset(seen)
    result = []

    def rec(i: int, inc: frozenset, exc: frozenset):
        if i == len(order):
            result.append(inc)
            return
        v = order[i]
        if v in inc or v in exc:
            rec(i + 1, inc, exc)
            return
        if not closure[v] & exc:
            rec(i + 1, inc | closure[v], exc)
        rec(i + 1, inc, exc | {v})

    rec(0, frozenset(), frozenset())
    return result


def enumerate_thin_quotients(R: DecoratedRep) -> list[tuple[int, ...]]:
    if not R.is_thin():
        raise NotThin(f"dimension vector {R.dims} is not thin")
    Q = R.quiver
    support = [j for j in range(1, Q.m + 1) if R.dim(j)]
    succ: dict = {j: set() for j in support}
    for a in Q.arrows:
        if R.dim(a.t) and R.dim(a.h) and R.maps[a.id][0][0]:
            succ[a.t].add(a.h)
    quotients = set()
    for U in _closed_sets(support, succ):
        quotients.add(tuple(R.dim(j) - int(j in U) for j in range(1, Q.m + 1)))
    return sorted(quotients, key=lambda e: (sum(e), e))


def dual_f_polynomial(R: DecoratedRep) -> LaurentExpr:
    """Sum of u^e over quotient dimension vectors e (thin case, each Grassmannian a point)."""
    m = R.quiver.m
    return LaurentExpr(m, {e: 1 for e in enumerate_thin_quotients(R)})


def f_polynomial(R: DecoratedRep) -> LaurentExpr:
    return dual_f_polynomial(dualize(R))


# JSON

def rep_to_json(R: DecoratedRep) -> dict:
    return {
        "dims": list(R.dims),
        "v": list(R.v),
        "maps": {aid: [[str(x) for x in row] for row in m] for aid, m in sorted(R.maps.items())},
    }


def rep_from_json(qp: QPInstance, data: dict) -> DecoratedRep:
    maps = {aid: [[Fraction(str(x)) for x in row] for row in m] for aid, m in data.get("maps", {}).items()}
    return DecoratedRep(qp, tuple(data["dims"]), maps, tuple(data.get("v", ())) or ())
