"""Ice quivers, exchange matrices and the three-step quiver mutation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Arrow",
    "IceQuiver",
    "BMatrix",
    "QuiverError",
    "TwoCycleAtK",
    "validate",
    "b_matrix",
    "exchange_matrix",
    "mutate_quiver",
    "mutate_b_matrix",
    "mutate_exchange_matrix",
    "full_subquiver",
    "reverse_name",
    "composite_name",
    "quiver_to_json",
    "quiver_from_json",
]


class QuiverError(ValueError):
    def __init__(self, issues: Sequence[str]):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


class TwoCycleAtK(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    t: int
    h: int


@dataclass(frozen=True)
class IceQuiver:
    """Vertices 1..m, mutable 1..n.  ``labels`` remembers original vertex names."""

    m: int
    n: int
    arrows: tuple[Arrow, ...]
    labels: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        arrows = tuple(sorted(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        object.__setattr__(self, "arrows", arrows)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.m + 1)))

    @classmethod
    def from_edges(cls, m: int, n: int, edges: Iterable[tuple[str, int, int]]) -> "IceQuiver":
        return cls(m, n, tuple(Arrow(*e) for e in edges))

    # lookups (cheap enough to recompute; quivers here are small)
    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def arrow_map(self) -> dict[str, Arrow]:
        return {a.id: a for a in self.arrows}

    def ids(self) -> set[str]:
        return {a.id for a in self.arrows}

    def in_arrows(self, k: int) -> list[Arrow]:
        return [a for a in self.arrows if a.h == k]

    def out_arrows(self, k: int) -> list[Arrow]:
        return [a for a in self.arrows if a.t == k]

    def is_mutable(self, v: int) -> bool:
        return 1 <= v <= self.n

    def frozen(self) -> list[int]:
        return list(range(self.n + 1, self.m + 1))

    def is_sink(self, v: int) -> bool:
        return not any(a.t == v for a in self.arrows)

    def is_source(self, v: int) -> bool:
        return not any(a.h == v for a in self.arrows)

    def has_two_cycle_at(self, k: int) -> bool:
        outs = {a.h for a in self.arrows if a.t == k}
        return any(a.h == k and a.t in outs for a in self.arrows)

    def two_cycles(self) -> list[tuple[Arrow, Arrow]]:
        found = []
        for a in self.arrows:
            for b in self.arrows:
                if a.id < b.id and a.t == b.h and a.h == b.t:
                    found.append((a, b))
        return found

    def arrow_multiset(self) -> Counter:
        return Counter((a.t, a.h) for a in self.arrows)

    def opposite(self) -> "IceQuiver":
        return IceQuiver(self.m, self.n, tuple(Arrow(a.id, a.h, a.t) for a in self.arrows), self.labels)

    def relabel(self, labels: Sequence[int]) -> "IceQuiver":
        return IceQuiver(self.m, self.n, self.arrows, tuple(labels))

    def __repr__(self):
        body = ", ".join(f"{a.id}:{a.t}->{a.h}" for a in self.arrows)
        return f"IceQuiver(m={self.m}, n={self.n}, [{body}])"


def validate(Q: IceQuiver) -> list[str]:
    """All invariant violations as short messages; empty means valid."""
    issues = []
    if not 0 <= Q.n <= Q.m:
        issues.append(f"BadCounts: n={Q.n}, m={Q.m}")
    seen = Counter(a.id for a in Q.arrows)
    for aid, c in sorted(seen.items()):
        if c > 1:
            issues.append(f"DuplicateArrowId: {aid}")
    for a in Q.arrows:
        if not (1 <= a.t <= Q.m and 1 <= a.h <= Q.m):
            issues.append(f"VertexOutOfRange: {a.id}")
        elif a.t == a.h:
            issues.append(f"Loop: {a.id} at {a.t}")
        elif a.t > Q.n and a.h > Q.n:
            issues.append(f"FrozenFrozenArrow: {a.id} {a.t}->{a.h}")
    return issues


class BMatrix:
    """Integer m x n matrix with b[i][j] = #(j->i) - #(i->j); indices are 1-based."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[int]]):
        self.entries = tuple(tuple(int(x) for x in row) for row in entries)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def principal(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row[: self.n] for row in self.entries[: self.n])

    def is_skew_principal(self) -> bool:
        p = self.principal()
        return all(p[i][j] == -p[j][i] for i in range(self.n) for j in range(self.n))

    def __eq__(self, other):
        return isinstance(other, BMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"BMatrix({[list(r) for r in self.entries]})"


def exchange_matrix(Q: IceQuiver) -> list[list[int]]:
    """Full skew-symmetric m x m matrix (0-based lists), b[i][j] = #(j->i) - #(i->j)."""
    b = [[0] * Q.m for _ in range(Q.m)]
    for a in Q.arrows:
        b[a.h - 1][a.t - 1] += 1
        b[a.t - 1][a.h - 1] -= 1
    return b


def b_matrix(Q: IceQuiver) -> BMatrix:
    full = exchange_matrix(Q)
    return BMatrix([row[: Q.n] for row in full])


def _mutate_entries(b: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Matrix mutation at 0-based column k (k must index both a row and a column)."""
    rows, cols = len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        bik = b[i][k]
        for j in range(cols):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                bkj = b[k][j]
                out[i][j] = b[i][j] + max(bik, 0) * max(bkj, 0) - max(-bik, 0) * max(-bkj, 0)
    return out


def mutate_b_matrix(B: BMatrix, k: int) -> BMatrix:
    if not 1 <= k <= B.n:
        raise ValueError(f"vertex {k} is not mutable")
    return BMatrix(_mutate_entries(B.entries, k - 1))


def mutate_exchange_matrix(b: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    """Mutation of a full m x m exchange matrix at 1-based k."""
    return _mutate_entries(b, k - 1)


def reverse_name(aid: str) -> str:
    return aid[:-1] if aid.endswith("*") else aid + "*"


def composite_name(x: str, y: str) -> str:
    # sorted pair: the name of a composite does not depend on the orientation
    # of the quiver, so opposite quivers mutate to opposite quivers verbatim
    a, b = sorted((x, y))
    return f"[{a},{b}]"


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def premutation_arrows(Q: IceQuiver, k: int) -> tuple[list[Arrow], list[tuple[Arrow, Arrow, Arrow, Arrow, Arrow]]]:
    """Steps 1 and 2.  Returns the arrows of the premutated quiver and the hooks.

    Each hook is (a, b, a*, b*, [ab]) with b into k and a out of k.
    """
    if not Q.is_mutable(k):
        raise ValueError(f"vertex {k} is not mutable")
    if Q.has_two_cycle_at(k):
        raise TwoCycleAtK(f"2-cycle through vertex {k}")
    ins, outs = Q.in_arrows(k), Q.out_arrows(k)
    taken = {a.id for a in Q.arrows if k not in (a.t, a.h)}
    keep = [a for a in Q.arrows if k not in (a.t, a.h)]
    rev = {}
    for a in ins + outs:
        name = _fresh(reverse_name(a.id), taken)
        taken.add(name)
        rev[a.id] = Arrow(name, a.h, a.t)
    hooks = []
    comps = []
    for a in outs:
        for b in ins:
            name = _fresh(composite_name(a.id, b.id), taken)
            taken.add(name)
            c = Arrow(name, b.t, a.h)
            comps.append(c)
            hooks.append((a, b, rev[a.id], rev[b.id], c))
    return keep + comps + list(rev.values()), hooks


def cancel_two_cycles(arrows: Sequence[Arrow]) -> list[Arrow]:
    """Step 3: greedy maximal removal of disjoint 2-cycles in id order."""
    alive = sorted(arrows)
    removed: set[str] = set()
    for x in alive:
        if x.id in removed:
            continue
        for y in alive:
            if y.id not in removed and y.id != x.id and y.t == x.h and y.h == x.t:
                removed.update((x.id, y.id))
                break
    return [a for a in alive if a.id not in removed]


def mutate_quiver(Q: IceQuiver, k: int, *, keep_frozen_arrows: bool = False) -> IceQuiver:
    """Three-step mutation at a mutable vertex k.

    Arrows created between two frozen vertices are dropped unless
    ``keep_frozen_arrows`` is set, so the result is again an ice quiver.
    """
    arrows, _ = premutation_arrows(Q, k)
    arrows = cancel_two_cycles(arrows)
    if not keep_frozen_arrows:
        arrows = [a for a in arrows if a.t <= Q.n or a.h <= Q.n]
    return IceQuiver(Q.m, Q.n, tuple(arrows), Q.labels)


def full_subquiver(Q: IceQuiver, keep: Iterable[int]) -> IceQuiver:
    """Full subquiver on ``keep``; vertices renumbered in increasing order."""
    keep = sorted(set(keep))
    for v in keep:
        if not 1 <= v <= Q.m:
            raise ValueError(f"vertex {v} out of range")
    new = {v: i + 1 for i, v in enumerate(keep)}
    n = sum(1 for v in keep if v <= Q.n)
    arrows = tuple(Arrow(a.id, new[a.t], new[a.h]) for a in Q.arrows if a.t in new and a.h in new)
    return IceQuiver(len(keep), n, arrows, tuple(Q.labels[v - 1] for v in keep))


def quiver_to_json(Q: IceQuiver) -> dict:
    return {"m": Q.m, "n": Q.n, "arrows": [{"id": a.id, "t": a.t, "h": a.h} for a in Q.arrows]}


def quiver_from_json(data: dict) -> IceQuiver:
    try:
        arrows = tuple(Arrow(str(a["id"]), int(a["t"]), int(a["h"])) for a in data["arrows"])
        return IceQuiver(int(data["m"]), int(data["n"]), arrows)
    except (KeyError, TypeError) as exc:
        raise QuiverError([f"MalformedJSON: {exc}"]) from None
