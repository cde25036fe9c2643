"""Type A: reduced words of w_0, wiring diagrams, the quivers Gamma_i and string cones.

Positions in a word are 1-based.  Wire p starts at height p - 1 on the left; the
crossing for a letter j swaps the wires at heights j - 1 and j.  Quiver vertices of
``gamma_quiver`` are renumbered so mutable ones come first; ``quiver.labels``
maps a vertex back to its word position.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .qp import Potential, QPInstance, restrict_potential
from .quiver import Arrow, IceQuiver
from .rep import build_projective
from .symbolic import LaurentExpr, RationalExpr, to_laurent, tropicalize

__all__ = [
    "ReducedWordError",
    "NoBraidChainWithinBound",
    "WiringDiagram",
    "Cone",
    "validate_reduced_word",
    "reduced_words",
    "wiring_diagram",
    "next_occurrence",
    "frozen_position",
    "gamma_quiver",
    "face_potential",
    "gamma_qp",
    "ca_hat",
    "ca_hat_chambers",
    "ca_hat_map",
    "rigorous_paths",
    "a_gamma",
    "enclosed_chambers",
    "w_via_paths",
    "w_chart",
    "w_fpoly",
    "string_cone_gp",
    "string_cone_fpoly",
    "string_cone_sigma",
    "braid_moves",
    "braid_chain",
    "braid_transition",
    "braid_transition_trop",
    "varsigma",
    "dynkin_for_diagram",
    "projective_for_index",
]


class ReducedWordError(ValueError):
    pass


class NoBraidChainWithinBound(RuntimeError):
    pass


# reduced words and wiring diagrams

def _check_letters(n: int, word: Sequence[int]) -> tuple[int, ...]:
    word = tuple(int(x) for x in word)
    if n < 2:
        raise ReducedWordError("n must be at least 2")
    for x in word:
        if not 1 <= x <= n - 1:
            raise ReducedWordError(f"letter {x} outside 1..{n - 1}")
    return word


def validate_reduced_word(n: int, word: Sequence[int]) -> tuple[int, ...]:
    """Return the word as a tuple or raise ReducedWordError."""
    word = _check_letters(n, word)
    N = n * (n - 1) // 2
    if len(word) != N:
        raise ReducedWordError(f"length {len(word)}, expected {N}")
    at = list(range(1, n + 1))
    seen = set()
    for s, j in enumerate(word, 1):
        p, q = sorted((at[j - 1], at[j]))
        if (p, q) in seen:
            raise ReducedWordError(f"wires {p},{q} cross twice (position {s})")
        seen.add((p, q))
        at[j - 1], at[j] = at[j], at[j - 1]
    return word


def reduced_words(n: int) -> list[tuple[int, ...]]:
    """All reduced words of the longest element of S_n, sorted."""

    @lru_cache(maxsize=None)
    def rec(perm: tuple) -> tuple:
        descents = [a for a in range(1, n) if perm[a - 1] > perm[a]]
        if not descents:
            return ((),)
        out = []
        for a in descents:
            p = list(perm)
            p[a - 1], p[a] = p[a], p[a - 1]
            for w in rec(tuple(p)):
                out.append(w + (a,))
        return tuple(out)

    return sorted(rec(tuple(range(n, 0, -1))))


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    word: tuple[int, ...]
    crossings: tuple[tuple[int, int], ...]  # position s -> (p, q), p < q
    heights: tuple[tuple[int, ...], ...]  # heights[s][p-1]: height of wire p after s crossings

    @property
    def N(self) -> int:
        return len(self.word)

    def wire_vertices(self, p: int) -> list[int]:
        """Positions of the crossings on wire p, left to right."""
        return [s for s, pq in enumerate(self.crossings, 1) if p in pq]

    def height(self, p: int, after: int) -> int:
        return self.heights[after][p - 1]

    def ascii(self) -> str:
        """Plain-text picture: one row per height, top row highest."""
        rows = []
        for h in range(self.n - 1, -1, -1):
            line = [f"{self._wire_at(h, 0):>2} "]
            for s in range(1, self.N + 1):
                j = self.word[s - 1]
                if h in (j - 1, j):
                    line.append("-X-")
                else:
                    line.append("---")
            line.append(f" {self._wire_at(h, self.N)}")
            rows.append("".join(line))
        rows.append("   " + "".join(f"{j:^3}" for j in self.word))
        return "\n".join(rows)

    def _wire_at(self, h: int, after: int) -> int:
        return self.heights[after].index(h) + 1


def wiring_diagram(n: int, word: Sequence[int]) -> WiringDiagram:
    word = validate_reduced_word(n, word)
    at = list(range(1, n + 1))  # at[h] = wire at height h
    hts = [tuple(range(n))]
    crossings = []
    for j in word:
        p, q = at[j - 1], at[j]
        crossings.append((min(p, q), max(p, q)))
        at[j - 1], at[j] = q, p
        h = [0] * n
        for height, wire in enumerate(at):
            h[wire - 1] = height
        hts.append(tuple(h))
    return WiringDiagram(n, word, tuple(crossings), tuple(hts))


def next_occurrence(word: Sequence[int], j: int) -> int:
    """j^+ : next position with the same letter, or N + 1."""
    for s in range(j + 1, len(word) + 1):
        if word[s - 1] == word[j - 1]:
            return s
    return len(word) + 1


def frozen_position(word: Sequence[int], i: int) -> int:
    """ell_i: last position carrying the letter i."""
    return max(s for s, x in enumerate(word, 1) if x == i)


# the quiver Gamma_i and its potential

def _gamma_edges(word: Sequence[int]) -> list[tuple[int, int]]:
    N = len(word)
    plus = [next_occurrence(word, j) for j in range(1, N + 1)]
    edges = []
    for j in range(1, N + 1):
        for s in range(j + 1, N + 1):
            jp, sp = plus[j - 1], plus[s - 1]
            if jp > N and sp > N:
                continue
            if s == jp:
                edges.append((j, s))
            elif s < jp < sp and abs(word[j - 1] - word[s - 1]) == 1:
                edges.append((s, j))
    return edges


def _arrow_name(t: int, h: int) -> str:
    return f"a{t}_{h}"


def gamma_quiver(word: Sequence[int]) -> IceQuiver:
    word = tuple(word)
    N = len(word)
    frozen = [j for j in range(1, N + 1) if next_occurrence(word, j) > N]
    mutable = [j for j in range(1, N + 1) if next_occurrence(word, j) <= N]
    order = mutable + frozen
    new = {v: i + 1 for i, v in enumerate(order)}
    arrows = tuple(Arrow(_arrow_name(new[t], new[h]), new[t], new[h]) for t, h in _gamma_edges(word))
    return IceQuiver(N, len(mutable), arrows, tuple(order))


def _segments_cross(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    if {p1, p2} & {p3, p4}:
        return False
    o1, o2 = orient(p1, p2, p3), orient(p1, p2, p4)
    o3, o4 = orient(p3, p4, p1), orient(p3, p4, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def _faces(points: dict, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Bounded faces of a straight-line plane graph, as vertex cycles."""
    nbrs: dict = {v: [] for v in points}
    for t, h in edges:
        nbrs[t].append(h)
        nbrs[h].append(t)
    for v, ns in nbrs.items():
        x0, y0 = points[v]
        ns.sort(key=lambda w: math.atan2(points[w][1] - y0, points[w][0] - x0))
    used = set()
    faces = []
    for t, h in edges:
        for start in ((t, h), (h, t)):
            if start in used:
                continue
            cyc = []
            u, v = start
            while (u, v) not in used:
                used.add((u, v))
                cyc.append(u)
                ns = nbrs[v]
                # turn: the neighbour just before u in counter-clockwise order around v
                w = ns[(ns.index(u) - 1) % len(ns)]
                u, v = v, w
            faces.append(cyc)
    bounded = [f for f in faces if _area(points, f) > 0]
    return bounded


def _area(points: dict, cyc: Sequence[int]) -> float:
    s = 0.0
    for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
        s += points[a][0] * points[b][1] - points[b][0] * points[a][1]
    return s / 2


def face_potential(word: Sequence[int], Q: IceQuiver | None = None) -> Potential:
    """Clockwise faces minus anticlockwise faces of Gamma_i drawn with vertex j at (j, i_j)."""
    word = tuple(word)
    Q = Q or gamma_quiver(word)
    pos = {v: Q.labels[v - 1] for v in range(1, Q.m + 1)}
    points = {v: (pos[v], word[pos[v] - 1]) for v in pos}
    edges = [(a.t, a.h) for a in Q.arrows]
    segs = [(points[t], points[h]) for t, h in edges]
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            if _segments_cross(*segs[x], *segs[y]):
                raise ValueError("embedding of the quiver is not planar")
    by_pair = {(a.t, a.h): a.id for a in Q.arrows}
    terms = []
    for face in _faces(points, edges):
        cyc = list(face)
        for orient in (cyc, cyc[::-1]):
            pairs = list(zip(orient, orient[1:] + orient[:1]))
            if all(p in by_pair for p in pairs):
                traversal = [by_pair[p] for p in pairs]
                sign = 1 if _area(points, orient) < 0 else -1
                terms.append((sign, tuple(reversed(traversal))))
                break
    return Potential(terms)


def gamma_qp(word: Sequence[int]) -> QPInstance:
    Q = gamma_quiver(word)
    return QPInstance(Q, face_potential(word, Q))


# the monomial map CA-hat

def ca_hat(word: Sequence[int]) -> list[list[int]]:
    """Exponent matrix C with CA(x)_j = prod_s x_s^C[j][s] (0-based lists)."""
    word = tuple(word)
    N = len(word)
    C = [[0] * N for _ in range(N)]
    for j in range(1, N + 1):
        jp = next_occurrence(word, j)
        C[j - 1][j - 1] = -1
        if jp <= N:
            C[j - 1][jp - 1] = -1
        for s in range(j + 1, min(jp, N + 1)):
            if abs(word[s - 1] - word[j - 1]) == 1:
                C[j - 1][s - 1] = 1
    return C


def ca_hat_chambers(n: int, word: Sequence[int]) -> list[list[int]]:
    """Same matrix read off the wiring diagram: chamber k against its boundary vertices."""
    D = wiring_diagram(n, word)
    N = D.N
    C = [[0] * N for _ in range(N)]
    for k in range(1, N + 1):
        lev = word[k - 1]
        C[k - 1][k - 1] = -1  # leftmost vertex
        lower = D.heights[k].index(lev - 1) + 1
        upper = D.heights[k].index(lev) + 1
        for s in range(k + 1, N + 1):
            p, q = D.crossings[s - 1]
            if {p, q} == {lower, upper}:
                C[k - 1][s - 1] = -1  # rightmost vertex
                break
            if upper in (p, q):
                C[k - 1][s - 1] = 1  # the upper wire bends up: local maximum
                upper = q if upper == p else p
            elif lower in (p, q):
                C[k - 1][s - 1] = 1  # local minimum
                lower = q if lower == p else p
    return C


def ca_hat_map(word: Sequence[int]) -> list[RationalExpr]:
    C = ca_hat(word)
    return [RationalExpr.from_laurent(LaurentExpr.monomial(row)) for row in C]


# rigorous paths

RULES = ("fragments", "fragments-all", "literal")


def dynkin_for_diagram(n: int, i: int) -> int:
    """Dynkin index whose potential is read off the oriented diagram D(i)."""
    return n - i


def _forbidden(rule: str, i: int, p: int, q: int) -> bool:
    """Going straight along wire p through its crossing with q."""
    if rule == "literal":
        return (q <= i and not p > q) or (i < p and not p < q)
    # the two drawn fragments: both wires oriented alike
    if p <= i and q <= i:
        return p < q
    if p > i and q > i:
        return p > q
    return False


def rigorous_paths(n: int, word: Sequence[int], i: int, rule: str = "fragments") -> list[tuple[int, ...]]:
    """Rigorous paths in D(i) as tuples of crossing positions, sorted."""
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    D = wiring_diagram(n, word)
    if not 1 <= i <= n - 1:
        raise ValueError(f"index {i} outside 1..{n - 1}")
    nxt: dict = {}  # (vertex, wire) -> next vertex along the orientation of the wire
    for p in range(1, n + 1):
        vs = D.wire_vertices(p)
        if p > i:
            vs = vs[::-1]
        for a, b in zip(vs, vs[1:]):
            nxt[(a, p)] = b
    start_wire, end_wire = i + 1, i
    start = D.wire_vertices(start_wire)[-1]
    end = D.wire_vertices(end_wire)[-1]
    every = rule == "fragments-all"
    out = []

    def ok_straight(v: int, wire: int) -> bool:
        p, q = D.crossings[v - 1]
        other = q if wire == p else p
        return not _forbidden(rule, i, wire, other)

    def dfs(v: int, wire_in: int, path: list, seen: set):
        if v == end:
            # the path leaves along wire i to the right boundary
            if not (every and wire_in == end_wire and not ok_straight(v, end_wire)):
                out.append(tuple(path))
            return
        for wire in D.crossings[v - 1]:
            w = nxt.get((v, wire))
            if w is None or w in seen:
                continue
            straight = wire == wire_in
            interior = len(path) > 1
            if straight and (interior or every) and not ok_straight(v, wire):
                continue
            seen.add(w)
            path.append(w)
            dfs(w, wire, path, seen)
            path.pop()
            seen.discard(w)

    dfs(start, start_wire, [start], {start})
    return sorted(set(out))


def _path_wires(D: WiringDiagram, path: Sequence[int], i: int) -> list[int]:
    """Wire used on each edge of the path, with the entry and exit wires added."""
    wires = [i + 1]
    for a, b in zip(path, path[1:]):
        common = set(D.crossings[a - 1]) & set(D.crossings[b - 1])
        if len(common) != 1:
            raise ValueError(f"vertices {a},{b} are not joined by a single wire")
        wires.append(common.pop())
    wires.append(i)
    return wires


def a_gamma(n: int, word: Sequence[int], path: Sequence[int], i: int) -> tuple[int, ...]:
    D = wiring_diagram(n, word)
    wires = _path_wires(D, path, i)
    a = [0] * D.N
    for idx, v in enumerate(path):
        w_in, w_out = wires[idx], wires[idx + 1]
        if w_in == w_out:
            continue
        p, q = D.crossings[v - 1]
        if (w_in, w_out) == (p, q):
            a[v - 1] = 1
        elif (w_in, w_out) == (q, p):
            a[v - 1] = -1
    return tuple(a)


def _wire_polyline(D: WiringDiagram, p: int, a: int | None, b: int | None) -> list[tuple]:
    """Points of wire p from crossing a to crossing b (None = right boundary)."""

    def vpt(s):
        return (s, D.word[s - 1] - 0.5)

    if a is not None and b is not None and a > b:
        return _wire_polyline(D, p, b, a)[::-1]
    after = a if a is not None else 0
    h = D.height(p, after)
    pts = []
    if a is not None:
        pts += [vpt(a), (a + 0.5, h)]
    else:
        pts += [(0.0, h)]
    if b is not None:
        pts += [(b - 0.5, h), vpt(b)]
    else:
        pts += [(D.N + 1.0, h)]
    return pts


def enclosed_chambers(n: int, word: Sequence[int], path: Sequence[int], i: int) -> list[int]:
    """Chambers inside the region cut off by the path and the right boundary."""
    D = wiring_diagram(n, word)
    wires = _path_wires(D, path, i)
    poly = _wire_polyline(D, i + 1, path[0], None)[::-1]
    for idx, (a, b) in enumerate(zip(path, path[1:])):
        poly += _wire_polyline(D, wires[idx + 1], a, b)[1:]
    poly += _wire_polyline(D, i, path[-1], None)[1:]
    inside = []
    for j in range(1, D.N + 1):
        x, y = j + 0.75, D.word[j - 1] - 0.4
        if _point_in_polygon(x, y, poly):
            inside.append(j)
    return inside


def _point_in_polygon(x: float, y: float, poly: Sequence[tuple]) -> bool:
    """Even-odd rule with a ray towards +x; the closing edge runs along x = N + 1."""
    hit = False
    pts = list(poly)
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                hit = not hit
    return hit


def w_via_paths(n: int, word: Sequence[int], dynkin: int, rule: str = "fragments") -> LaurentExpr:
    """W for the Dynkin index, in variables indexed by word positions."""
    i = n - dynkin
    N = len(word)
    terms: dict = {}
    for path in rigorous_paths(n, word, i, rule):
        e = [0] * N
        for j in enclosed_chambers(n, word, path, i):
            e[j - 1] = -1
        terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    return LaurentExpr(N, terms)


def _to_positions(f: LaurentExpr, Q: IceQuiver) -> LaurentExpr:
    return f.embed(Q.m, [Q.labels[v] - 1 for v in range(Q.m)])


def w_chart(word: Sequence[int], dynkin: int, depth_max: int = 10) -> LaurentExpr:
    from .cluster import lg_potential_chart

    Q = gamma_quiver(word)
    ell = Q.labels.index(frozen_position(word, dynkin)) + 1
    return _to_positions(lg_potential_chart(Q, ell, depth_max), Q)


def w_fpoly(word: Sequence[int], dynkin: int, d_max: int = 40) -> LaurentExpr:
    from .cluster import lg_potential_via_fpoly

    qp = gamma_qp(word)
    Q = qp.quiver
    ell = Q.labels.index(frozen_position(word, dynkin)) + 1
    return _to_positions(lg_potential_via_fpoly(qp, ell, d_max), Q)


def projective_for_index(word: Sequence[int], dynkin: int, d_max: int = 40):
    """The projective at ell_i over the restricted QP, with the vertex relabeling."""
    from .cluster import ell_subquiver

    qp = gamma_qp(word)
    Q = qp.quiver
    ell = Q.labels.index(frozen_position(word, dynkin)) + 1
    sub = ell_subquiver(Q, ell)
    return build_projective(restrict_potential(qp, sub), sub.m, d_max)


# cones

def _primitive(v: Iterable[int]) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v) if g else v


@dataclass(frozen=True)
class Cone:
    """Inequalities <A_r, x> >= 0 with primitive, deduplicated normals."""

    normals: tuple[tuple[int, ...], ...]

    @classmethod
    def from_normals(cls, normals: Iterable[Sequence[int]]) -> "Cone":
        vs = {_primitive(v) for v in normals}
        vs.discard(tuple(0 for _ in next(iter(vs)))) if vs else None
        return cls(tuple(sorted(vs)))

    def contains(self, x: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(v, x)) >= 0 for v in self.normals)

    def to_json(self) -> dict:
        return {"normals": [list(v) for v in self.normals]}


def _normal_from_exponent(e: Sequence[int], C: Sequence[Sequence[int]]) -> tuple[int, ...]:
    # X^{-e} composed with CA-hat is the monomial x^{-eC}
    N = len(C)
    return tuple(-sum(e[j] * C[j][s] for j in range(N)) for s in range(N))


def string_cone_gp(n: int, word: Sequence[int], rule: str = "fragments") -> Cone:
    normals = []
    for i in range(1, n):
        for path in rigorous_paths(n, word, i, rule):
            normals.append(tuple(-x for x in a_gamma(n, word, path, i)))
    return Cone.from_normals(normals)


def string_cone_fpoly(n: int, word: Sequence[int], d_max: int = 40) -> Cone:
    word = validate_reduced_word(n, word)
    C = ca_hat(word)
    normals = []
    for d in range(1, n):
        W = w_fpoly(word, d, d_max)
        for e in W.terms:
            normals.append(_normal_from_exponent([-x for x in e], C))
    return Cone.from_normals(normals)


def string_cone_sigma(n: int, word: Sequence[int]) -> Cone:
    word = validate_reduced_word(n, word)
    normals = []
    for d in range(1, n):
        normals.extend(tropicalize(varsigma(n, word, d)).normals())
    return Cone.from_normals(normals)


# braid moves and the transition maps

def braid_moves(word: Sequence[int]) -> list[tuple[int, int, tuple[int, ...]]]:
    """(kind, p, new word) for every applicable move; kind is 2 or 3, p 1-based."""
    word = tuple(word)
    out = []
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        if abs(a - b) >= 2:
            out.append((2, p + 1, word[:p] + (b, a) + word[p + 2:]))
        if p + 2 < len(word) and abs(a - b) == 1 and word[p + 2] == a:
            out.append((3, p + 1, word[:p] + (b, a, b) + word[p + 3:]))
    return out


def braid_chain(word: Sequence[int], target=None, bound: int | None = None, skip: int = 0):
    """Shortest chain of moves from ``word`` to a word accepted by ``target``.

    ``target`` is a word or a predicate.  ``skip`` > 0 returns a later solution
    in BFS order, used to compare different chains.
    """
    word = tuple(word)
    if target is None:
        raise ValueError("target required")
    accept = target if callable(target) else (lambda w, t=tuple(target): w == t)
    bound = bound if bound is not None else 4 * len(word) + 4
    prev = {word: None}
    queue = deque([word])
    found = []
    while queue:
        w = queue.popleft()
        if accept(w):
            found.append(w)
            if len(found) > skip:
                break
        for kind, p, nw in braid_moves(w):
            if nw not in prev:
                prev[nw] = (w, kind, p)
                queue.append(nw)
    if len(found) <= skip:
        raise NoBraidChainWithinBound(f"no braid chain from {word}")
    chain = []
    w = found[skip]
    while prev[w] is not None:
        pw, kind, p = prev[w]
        chain.append((kind, p, pw, w))
        w = pw
    chain.reverse()
    if len(chain) > bound:
        raise NoBraidChainWithinBound(f"chain of length {len(chain)} exceeds {bound}")
    return chain


def _apply_move(x: list, kind: int, p: int) -> list:
    y = list(x)
    k = p - 1
    if kind == 2:
        y[k], y[k + 1] = x[k + 1], x[k]
        return y
    a, b, c = x[k], x[k + 1], x[k + 2]
    s = a * c + b
    y[k] = b * c / s
    y[k + 1] = a * c
    y[k + 2] = s / c
    return y


def braid_transition(word: Sequence[int], target: Sequence[int]) -> list[RationalExpr]:
    """Psi from coordinates of ``word`` to coordinates of ``target``."""
    N = len(word)
    x = [RationalExpr.var(N, s) for s in range(N)]
    for kind, p, _, _ in braid_chain(word, target):
        x = _apply_move(x, kind, p)
    return x


def braid_transition_trop(x: Sequence[int], chain) -> list[int]:
    y = list(x)
    for kind, p, _, _ in chain:
        k = p - 1
        if kind == 2:
            y[k], y[k + 1] = y[k + 1], y[k]
            continue
        a, b, c = y[k], y[k + 1], y[k + 2]
        m = min(a + c, b)
        y[k], y[k + 1], y[k + 2] = b + c - m, a + c, m - c
    return y


def varsigma(n: int, word: Sequence[int], dynkin: int, skip: int = 0) -> LaurentExpr:
    """Last coordinate after transporting to a word ending in ``dynkin``."""
    word = validate_reduced_word(n, word)
    N = len(word)
    chain = braid_chain(word, lambda w: w[-1] == dynkin, skip=skip)
    x = [RationalExpr.var(N, s) for s in range(N)]
    for kind, p, _, _ in chain:
        x = _apply_move(x, kind, p)
    return to_laurent(x[-1])
