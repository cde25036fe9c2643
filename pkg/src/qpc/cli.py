"""Command line front end.

Exit codes: 0 ok, 2 input error, 3 pipelines disagree, 4 a search or
truncation bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cluster import NotFoundWithinDepth, lg_potential_chart, lg_potential_via_fpoly
from .qp import (
    NonSplitTrivialPart,
    QPInstance,
    ReductionDegreeExceeded,
    mutate_qp,
    potential_from_json,
    potential_to_json,
)
from .quiver import (
    QuiverError,
    TwoCycleAtK,
    b_matrix,
    mutate_quiver,
    quiver_from_json,
    quiver_to_json,
    validate,
)
from .rep import (
    DimensionNotStabilized,
    NotThin,
    build_injective,
    build_projective,
    check_module,
    mutate_rep,
    rep_from_json,
    rep_to_json,
)
from .symbolic import polynomial_to_json
from .typea import (
    NoBraidChainWithinBound,
    ReducedWordError,
    frozen_position,
    string_cone_fpoly,
    string_cone_gp,
    string_cone_sigma,
    validate_reduced_word,
    w_chart,
    w_fpoly,
    w_via_paths,
    wiring_diagram,
)

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE, EXIT_BOUND = 0, 2, 3, 4

BOUND_ERRORS = (
    NotFoundWithinDepth,
    DimensionNotStabilized,
    ReductionDegreeExceeded,
    NoBraidChainWithinBound,
)


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    depth_max: int = 10
    d_red: int | None = None
    d_max: int = 40
    seed: int = 0
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        for name in ("depth_max", "d_max", "jobs"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive")
        if self.d_red is not None and self.d_red < 1:
            raise InputError("--d-red must be positive")


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise InputError(f"cannot parse word {text!r}") from None


def _rank_from_length(N: int) -> int:
    n = int(round((1 + math.sqrt(1 + 8 * N)) / 2))
    if n * (n - 1) // 2 != N:
        raise InputError(f"a reduced word of w_0 cannot have length {N}")
    return n


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_quiver(path: str):
    data = _load_json(path)
    Q = quiver_from_json(data.get("quiver", data))
    issues = validate(Q)
    if issues:
        raise InputError("invalid quiver: " + "; ".join(issues))
    return Q, data


def _load_qp(path: str) -> QPInstance:
    Q, data = _load_quiver(path)
    S = potential_from_json(data.get("potential", []))
    try:
        return QPInstance(Q, S)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _check_word(word, n: int):
    for k in word:
        if not 1 <= k <= n:
            raise InputError(f"mutation index {k} is not a mutable vertex (1..{n})")


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# subcommands

def cmd_quiver_mutate(cfg: RunConfig, args) -> int:
    Q, _ = _load_quiver(args.file)
    word = _parse_word(args.word)
    _check_word(word, Q.n)
    for k in word:
        Q = mutate_quiver(Q, k)
    B = b_matrix(Q)
    payload = {"quiver": quiver_to_json(Q), "b_matrix": [list(r) for r in B.entries]}
    lines = [f"{a.id}: {a.t} -> {a.h}" for a in Q.arrows]
    lines += ["B =", *("  " + " ".join(f"{x:>3}" for x in r) for r in B.entries)]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_qp_mutate(cfg: RunConfig, args) -> int:
    qp = _load_qp(args.file)
    word = _parse_word(args.word)
    _check_word(word, qp.quiver.n)
    for k in word:
        qp = mutate_qp(qp, k, cfg.d_red)
    payload = {"quiver": quiver_to_json(qp.quiver), "potential": potential_to_json(qp.potential)}
    text = "\n".join([f"{a.id}: {a.t} -> {a.h}" for a in qp.quiver.arrows] + [f"S = {qp.potential.to_string()}"])
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_rep_projective(cfg: RunConfig, args) -> int:
    qp = _load_qp(args.file)
    if not 1 <= args.vertex <= qp.quiver.m:
        raise InputError(f"vertex {args.vertex} out of range")
    build = build_injective if args.injective else build_projective
    R = build(qp, args.vertex, cfg.d_max)
    _emit(cfg, rep_to_json(R), f"dims = {list(R.dims)}")
    return EXIT_OK


def cmd_rep_mutate(cfg: RunConfig, args) -> int:
    qp = _load_qp(args.file)
    if args.rep:
        R = rep_from_json(qp, _load_json(args.rep))
        issues = check_module(R)
        if issues:
            raise InputError("invalid representation: " + "; ".join(issues))
    elif args.projective:
        R = build_projective(qp, args.projective, cfg.d_max)
    else:
        raise InputError("give --rep FILE or --projective VERTEX")
    word = _parse_word(args.word)
    _check_word(word, qp.quiver.n)
    for k in word:
        R = mutate_rep(qp, R, k, cfg.d_red)
        qp = mutate_qp(qp, k, cfg.d_red)
    payload = {"qp": {"quiver": quiver_to_json(qp.quiver), "potential": potential_to_json(qp.potential)}}
    payload["rep"] = rep_to_json(R)
    _emit(cfg, payload, f"dims = {list(R.dims)}, v = {list(R.v)}")
    return EXIT_OK


def _lg_word_job(task):
    word, d, methods, depth_max, d_max = task
    n = _rank_from_length(len(word))
    out = {}
    if "chart" in methods:
        out["chart"] = w_chart(word, d, depth_max)
    if "fpoly" in methods:
        out["fpoly"] = w_fpoly(word, d, d_max)
    if "paths" in methods:
        out["paths"] = w_via_paths(n, word, d)
    return out


def _lg_quiver_job(task):
    qp, ell, methods, depth_max, d_max = task
    out = {}
    if "chart" in methods:
        out["chart"] = lg_potential_chart(qp.quiver, ell, depth_max)
    if "fpoly" in methods:
        out["fpoly"] = lg_potential_via_fpoly(qp, ell, d_max)
    return out


def _run_jobs(fn, tasks, jobs: int):
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, tasks))
    return [fn(t) for t in tasks]


def cmd_lg(cfg: RunConfig, args) -> int:
    method = args.method
    entries = []
    if args.word:
        word = _parse_word(args.word)
        n = _rank_from_length(len(word))
        validate_reduced_word(n, word)
        methods = ("chart", "fpoly", "paths") if method == "all" else (method,)
        dynkin = sorted(range(1, n), key=lambda d: frozen_position(word, d))
        tasks = [(word, d, methods, cfg.depth_max, cfg.d_max) for d in dynkin]
        results = _run_jobs(_lg_word_job, tasks, cfg.jobs)
        for d, res in zip(dynkin, results):
            entries.append({"frozen": frozen_position(word, d), "dynkin": d, "results": res})
    elif args.quiver:
        qp = _load_qp(args.quiver)
        if method == "paths":
            raise InputError("the paths method needs --word")
        methods = ("chart", "fpoly") if method == "all" else (method,)
        tasks = [(qp, ell, methods, cfg.depth_max, cfg.d_max) for ell in qp.quiver.frozen()]
        results = _run_jobs(_lg_quiver_job, tasks, cfg.jobs)
        for ell, res in zip(qp.quiver.frozen(), results):
            entries.append({"frozen": ell, "results": res})
    else:
        raise InputError("give --word or --quiver")
    agree = all(len({str(sorted(v.terms.items())) for v in e["results"].values()}) == 1 for e in entries)
    payload = {"potentials": [], "verdict": "AGREE" if agree else "DISAGREE"}
    lines = []
    for e in entries:
        item = {k: v for k, v in e.items() if k != "results"}
        item["W"] = {name: {"text": f.to_string("X"), "terms": polynomial_to_json(f)} for name, f in e["results"].items()}
        payload["potentials"].append(item)
        for name, f in e["results"].items():
            lines.append(f"W_{e['frozen']} [{name}] = {f.to_string('X')}")
    lines.append(payload["verdict"])
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_stringcone(cfg: RunConfig, args) -> int:
    word = _parse_word(args.word)
    n = _rank_from_length(len(word))
    validate_reduced_word(n, word)
    routes = {
        "gp": lambda: string_cone_gp(n, word),
        "fpoly": lambda: string_cone_fpoly(n, word, cfg.d_max),
        "sigma": lambda: string_cone_sigma(n, word),
    }
    names = list(routes) if args.method == "all" else [args.method]
    cones = {name: routes[name]() for name in names}
    agree = len({c.normals for c in cones.values()}) == 1
    first = cones[names[0]]
    payload = {"normals": [list(v) for v in first.normals]}
    if args.method == "all":
        payload["routes"] = {k: [list(v) for v in c.normals] for k, c in cones.items()}
        payload["verdict"] = "AGREE" if agree else "DISAGREE"
    lines = [" ".join(f"{x:>2}" for x in v) for v in first.normals]
    if args.method == "all":
        lines.append(payload["verdict"])
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_wiring(cfg: RunConfig, args) -> int:
    word = _parse_word(args.word)
    n = _rank_from_length(len(word))
    D = wiring_diagram(n, word)
    payload = {
        "n": n,
        "word": list(word),
        "crossings": [{"position": s, "level": word[s - 1], "wires": list(pq)} for s, pq in enumerate(D.crossings, 1)],
    }
    _emit(cfg, payload, D.ascii())
    return EXIT_OK


COMMANDS = {
    "quiver-mutate": cmd_quiver_mutate,
    "qp-mutate": cmd_qp_mutate,
    "rep-projective": cmd_rep_projective,
    "rep-mutate": cmd_rep_mutate,
    "lg": cmd_lg,
    "stringcone": cmd_stringcone,
    "wiring": cmd_wiring,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="json")
    common.add_argument("--depth-max", type=int, default=10, help="BFS depth for optimized seeds")
    common.add_argument("--d-red", type=int, default=None, help="degree bound for reduction")
    common.add_argument("--d-max", type=int, default=40, help="truncation bound for projectives")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (or QPC_SEED)")
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="qpc", description="Quivers with potential, cluster charts and string cones.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("quiver-mutate", parents=[common], help="mutate an ice quiver along a word")
    s.add_argument("file")
    s.add_argument("--word", default="")

    s = sub.add_parser("qp-mutate", parents=[common], help="mutate a quiver with potential")
    s.add_argument("file")
    s.add_argument("--word", default="")

    s = sub.add_parser("rep-projective", parents=[common], help="indecomposable projective (or injective)")
    s.add_argument("file")
    s.add_argument("--vertex", type=int, required=True)
    s.add_argument("--injective", action="store_true")

    s = sub.add_parser("rep-mutate", parents=[common], help="mutate a decorated representation")
    s.add_argument("file")
    s.add_argument("--rep")
    s.add_argument("--projective", type=int)
    s.add_argument("--word", default="")

    s = sub.add_parser("lg", parents=[common], help="Landau-Ginzburg potential per frozen vertex")
    s.add_argument("--word")
    s.add_argument("--quiver")
    s.add_argument("--method", choices=("chart", "fpoly", "paths", "all"), default="all")

    s = sub.add_parser("stringcone", parents=[common], help="string cone normals")
    s.add_argument("--word", required=True)
    s.add_argument("--method", choices=("gp", "fpoly", "sigma", "all"), default="all")

    s = sub.add_parser("wiring", parents=[common], help="wiring diagram of a reduced word")
    s.add_argument("--word", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("QPC_SEED", "0") or 0)
    random.seed(seed)
    try:
        cfg = RunConfig(args.command, args.depth_max, args.d_red, args.d_max, seed, args.fmt, args.jobs)
        return COMMANDS[args.command](cfg, args)
    except (InputError, QuiverError, ReducedWordError, TwoCycleAtK, NotThin, NonSplitTrivialPart) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BOUND_ERRORS as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
