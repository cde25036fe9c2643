"""Potentials, cyclic derivatives, premutation, reduction and restriction.

Paths are tuples of arrow ids written as composition of functions: the path
``(a1, ..., ad)`` traverses ``ad`` first, so it starts at ``t(ad)`` and ends at
``h(a1)``.  A cyclic path additionally has ``t(ad) == h(a1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .quiver import (
    Arrow,
    IceQuiver,
    TwoCycleAtK,
    premutation_arrows,
)

__all__ = [
    "Potential",
    "QPInstance",
    "PathLC",
    "ReductionDegreeExceeded",
    "NonSplitTrivialPart",
    "canonical_rotation",
    "cyclic_derivative",
    "second_cyclic_derivative",
    "substitute_arrow",
    "premutate",
    "reduce",
    "reduce_with_trace",
    "mutate_qp",
    "mutate_qp_with_trace",
    "restrict_potential",
    "check_2_acyclic_along",
    "potential_to_json",
    "potential_from_json",
]

Path = tuple
PathLC = dict  # {path tuple: Fraction}


class ReductionDegreeExceeded(RuntimeError):
    pass


class NonSplitTrivialPart(RuntimeError):
    pass


def canonical_rotation(cycle: Sequence[str]) -> tuple:
    c = tuple(cycle)
    return min(c[i:] + c[:i] for i in range(len(c))) if c else c


def _add_into(acc: dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class Potential:
    """Finite linear combination of cycles up to rotation."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[object, Sequence[str]]] = ()):
        acc: dict = {}
        for c, cyc in terms:
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                _add_into(acc, canonical_rotation(cyc), c)
        self._terms = tuple(sorted(((cyc, c) for cyc, c in acc.items()), key=lambda t: (len(t[0]), t[0])))

    @classmethod
    def from_dict(cls, d: Mapping[tuple, Fraction]) -> "Potential":
        return cls((c, cyc) for cyc, c in d.items())

    @property
    def terms(self) -> tuple[tuple[Fraction, tuple], ...]:
        return tuple((c, cyc) for cyc, c in self._terms)

    def as_dict(self) -> dict:
        return dict(self._terms)

    def arrows(self) -> set[str]:
        return {x for cyc, _ in self._terms for x in cyc}

    def is_zero(self) -> bool:
        return not self._terms

    def max_length(self) -> int:
        return max((len(cyc) for cyc, _ in self._terms), default=0)

    def min_length(self) -> int:
        return min((len(cyc) for cyc, _ in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(cyc) for cyc, _ in self._terms}) <= 1

    def degree_two_terms(self) -> list[tuple[tuple, Fraction]]:
        return [(cyc, c) for cyc, c in self._terms if len(cyc) == 2]

    def __add__(self, other: "Potential") -> "Potential":
        return Potential(list(self.terms) + list(other.terms))

    def __neg__(self) -> "Potential":
        return Potential((-c, cyc) for c, cyc in self.terms)

    def __sub__(self, other: "Potential") -> "Potential":
        return self + (-other)

    def scale(self, c) -> "Potential":
        return Potential((c * x, cyc) for x, cyc in self.terms)

    def reversed(self) -> "Potential":
        return Potential((c, tuple(reversed(cyc))) for c, cyc in self.terms)

    def rename(self, mapping: Mapping[str, str]) -> "Potential":
        return Potential((c, tuple(mapping.get(x, x) for x in cyc)) for c, cyc in self.terms)

    def __eq__(self, other):
        return isinstance(other, Potential) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for cyc, c in self._terms:
            word = "".join(cyc) if all(len(x) == 1 for x in cyc) else " ".join(cyc)
            if c == 1:
                parts.append(word)
            elif c == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Potential({self.to_string()})"


def _path_ends(path: Sequence[str], amap: Mapping[str, Arrow]) -> tuple[int, int] | None:
    """(start, end) of a composable path, None if not composable."""
    for x, y in zip(path, path[1:]):
        if amap[x].t != amap[y].h:
            return None
    return amap[path[-1]].t, amap[path[0]].h


@dataclass(frozen=True)
class QPInstance:
    quiver: IceQuiver
    potential: Potential = Potential()

    def __post_init__(self):
        amap = self.quiver.arrow_map()
        for c, cyc in self.potential.terms:
            for x in cyc:
                if x not in amap:
                    raise ValueError(f"potential uses unknown arrow {x!r}")
            ends = _path_ends(cyc, amap)
            if ends is None or ends[0] != ends[1]:
                raise ValueError(f"term {cyc} is not a cyclic path")

    @property
    def reduced(self) -> bool:
        return not self.potential.degree_two_terms()

    def opposite(self) -> "QPInstance":
        return QPInstance(self.quiver.opposite(), self.potential.reversed())

    def is_two_acyclic(self) -> bool:
        return not self.quiver.two_cycles()


def cyclic_derivative(S: Potential, a: str) -> PathLC:
    out: dict = {}
    for c, cyc in S.terms:
        for i, x in enumerate(cyc):
            if x == a:
                _add_into(out, cyc[i + 1:] + cyc[:i], c)
    return out


def second_cyclic_derivative(S: Potential, b: str, a: str, quiver: IceQuiver | None = None) -> PathLC:
    """Complementary paths of the cyclic factor ``b a`` (b out of k, a into k)."""
    if quiver is not None:
        ab, aa = quiver.arrow(b), quiver.arrow(a)
        if ab.t != aa.h:
            raise ValueError(f"{b}{a} is not a hook: t({b})={ab.t}, h({a})={aa.h}")
    out: dict = {}
    for c, cyc in S.terms:
        d = len(cyc)
        for i in range(d):
            if cyc[i] == b and cyc[(i + 1) % d] == a:
                rot = cyc[i:] + cyc[:i]
                _add_into(out, rot[2:], c)
    return out


def substitute_arrow(S: Potential, arrow: str, image: PathLC, max_degree: int | None = None):
    """Replace every occurrence of ``arrow`` by ``image`` simultaneously.

    Returns (new potential as dict, list of dropped (cycle, coeff) over the bound).
    """
    acc: dict = {}
    dropped: list = []
    img = list(image.items())
    for c, cyc in S.terms:
        pos = [i for i, x in enumerate(cyc) if x == arrow]
        if not pos:
            _add_into(acc, cyc, c)
            continue
        for choice in product(img, repeat=len(pos)):
            coeff = c
            parts = []
            last = 0
            for p, (path, k) in zip(pos, choice):
                parts.append(cyc[last:p])
                parts.append(path)
                coeff *= k
                last = p + 1
            parts.append(cyc[last:])
            new = tuple(x for part in parts for x in part)
            if max_degree is not None and len(new) > max_degree:
                dropped.append((new, coeff))
                continue
            _add_into(acc, canonical_rotation(new), coeff)
    return acc, dropped


def _rotate_away_from(cyc: tuple, k: int, amap: Mapping[str, Arrow]) -> tuple:
    """Rotate so the cycle starts at its smallest vertex different from k."""
    d = len(cyc)
    # the cycle cyc[i:] + cyc[:i] starts and ends at h(cyc[i])
    options = [(amap[cyc[i]].h, i) for i in range(d) if amap[cyc[i]].h != k]
    if not options:
        raise TwoCycleAtK(f"cycle {cyc} only visits {k}")
    _, i = min(options)
    return cyc[i:] + cyc[:i]


def premutate(qp: QPInstance, k: int) -> QPInstance:
    Q = qp.quiver
    arrows, hooks = premutation_arrows(Q, k)
    amap = Q.arrow_map()
    comp = {(a.id, b.id): c.id for a, b, _, _, c in hooks}
    terms = []
    for c, cyc in qp.potential.terms:
        rot = _rotate_away_from(cyc, k, amap)
        out = []
        i = 0
        while i < len(rot):
            if i + 1 < len(rot) and (rot[i], rot[i + 1]) in comp:
                out.append(comp[(rot[i], rot[i + 1])])
                i += 2
            else:
                out.append(rot[i])
                i += 1
        terms.append((c, tuple(out)))
    for a, b, astar, bstar, ab in hooks:
        terms.append((Fraction(1), (astar.id, ab.id, bstar.id)))
    return QPInstance(IceQuiver(Q.m, Q.n, tuple(arrows), Q.labels), Potential(terms))


@dataclass(frozen=True)
class ReductionTrace:
    """Substitutions (arrow, h) meaning arrow -> arrow + h, then deleted arrows."""

    steps: tuple
    removed: tuple


def default_reduction_bound(S: Potential) -> int:
    return 2 * max(S.max_length(), 3) + 4


def reduce_with_trace(qp: QPInstance, d_red: int | None = None) -> tuple[QPInstance, ReductionTrace]:
    if d_red is None:
        d_red = default_reduction_bound(qp.potential)
    S = qp.potential.as_dict()
    steps = []
    removed: list[str] = []
    gone: set[str] = set()
    while True:
        deg2 = sorted(cyc for cyc in S if len(cyc) == 2 and not gone.intersection(cyc))
        if not deg2:
            break
        u, v = deg2[0]
        for _ in range(4 * d_red + 8):
            c = S.get((u, v))
            if c is None:
                break
            S1 = {cyc: x for cyc, x in S.items() if cyc != (u, v)}
            if any(u in cyc for cyc in S1):
                target, deriv = v, cyclic_derivative(Potential.from_dict(S1), u)
            elif any(v in cyc for cyc in S1):
                target, deriv = u, cyclic_derivative(Potential.from_dict(S1), v)
            else:
                break
            h = {p: -x / c for p, x in deriv.items()}
            image = dict(h)
            _add_into(image, (target,), Fraction(1))
            S, dropped = substitute_arrow(Potential.from_dict(S), target, image, d_red)
            for cyc, x in dropped:
                if u in cyc or v in cyc:
                    raise ReductionDegreeExceeded(
                        f"eliminating the 2-cycle {u}{v} needs terms beyond degree {d_red}"
                    )
            steps.append((target, tuple(sorted(h.items()))))
        else:
            raise ReductionDegreeExceeded(f"2-cycle {u}{v} did not split within the iteration bound")
        if (u, v) not in S:
            # the leading 2-cycle cancelled out during substitution; retry with the rest
            if not any(len(cyc) == 2 for cyc in S):
                break
            continue
        gone.update((u, v))
        removed.extend((u, v))
        del S[(u, v)]
        if any(u in cyc or v in cyc for cyc in S):
            raise NonSplitTrivialPart(f"arrows {u},{v} survive in higher terms")
    arrows = tuple(a for a in qp.quiver.arrows if a.id not in gone)
    Q = IceQuiver(qp.quiver.m, qp.quiver.n, arrows, qp.quiver.labels)
    return QPInstance(Q, Potential.from_dict(S)), ReductionTrace(tuple(steps), tuple(removed))


def reduce(qp: QPInstance, d_red: int | None = None) -> QPInstance:
    return reduce_with_trace(qp, d_red)[0]


@lru_cache(maxsize=4096)
def _mutate_cached(qp: QPInstance, labels: tuple, k: int, d_red: int | None):
    pre = premutate(qp, k)
    red, trace = reduce_with_trace(pre, d_red)
    return pre, trace, red


def mutate_qp_with_trace(qp: QPInstance, k: int, d_red: int | None = None):
    """(premutated QP, reduction trace, mutated QP)."""
    return _mutate_cached(qp, qp.quiver.labels, k, d_red)


def mutate_qp(qp: QPInstance, k: int, d_red: int | None = None) -> QPInstance:
    return mutate_qp_with_trace(qp, k, d_red)[2]


def restrict_potential(qp: QPInstance, sub: IceQuiver) -> QPInstance:
    ids = sub.ids()
    terms = [(c, cyc) for c, cyc in qp.potential.terms if all(x in ids for x in cyc)]
    return QPInstance(sub, Potential(terms))


def check_2_acyclic_along(qp: QPInstance, word: Sequence[int], d_red: int | None = None) -> int | None:
    """Index (0-based) of the first step whose result has a 2-cycle, else None."""
    cur = qp
    for idx, k in enumerate(word):
        try:
            cur = mutate_qp(cur, k, d_red)
        except TwoCycleAtK:
            return idx
        if not cur.is_two_acyclic():
            return idx
    return None


def potential_to_json(S: Potential) -> list:
    return [{"coeff": str(c), "cycle": list(cyc)} for c, cyc in S.terms]


def potential_from_json(data: list) -> Potential:
    return Potential((Fraction(str(t["coeff"])), tuple(t["cycle"])) for t in data)
