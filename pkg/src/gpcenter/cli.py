"""Command-line interface.

Output is one JSON object per line unless ``--human`` is given. Exit codes:
0 success, 1 a checked property does not hold, 2 bad input, 3 an internal
invariant failed (usually a graph outside the class a method assumes).
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .biphelly import BH_STEP
from .bridged import WB_STEP
from .cb import CB_STEP
from .errors import GenerationError, InputError, InvariantViolation
from .gen import FAMILIES, gen_family, gen_profile, write_instance
from .graph import Graph, Profile
from .io import format_graph, parse_graph, parse_profile
from .oracle import (
    all_pairs,
    ball_convexity_check,
    helly_family_check,
    hyperbolicity_exact,
    is_Gp_unimodal_for_profile,
    is_p_weakly_peakless,
    verify_diam_rad_inequality,
)
from .recognize import (
    CLASS_RECOGNIZERS,
    RECOGNIZE_CAP,
    UNIMODAL_CAP,
    build_violating_profile,
    classify,
    recognize_Gp_unimodal_radius,
)
from .solvers import METHODS, MethodMismatch, solve, weight_json

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3
STEPS = {"bridged": WB_STEP, "biphelly": BH_STEP, "cb": CB_STEP}
CSV_FIELDS = ("family", "n", "m", "method", "seed", "radius", "steps", "millis")


def _emit(obj: dict[str, Any], human: bool) -> None:
    if human:
        width = max((len(k) for k in obj), default=0)
        for k, v in obj.items():
            print(f"{k:<{width}}  {v if not isinstance(v, (dict, list)) else json.dumps(v)}")
    else:
        print(json.dumps(obj, sort_keys=False, default=_jsonable))


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return weight_json(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return weight_json(float(obj))
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _profile_json(pi: Profile) -> dict[str, Any]:
    return {str(v): weight_json(w) for v, w in pi.weights.items()}


# recognize


def cmd_recognize(args: argparse.Namespace) -> int:
    g = parse_graph(Path(args.graph))
    cap = args.cap
    if args.cls == "all":
        verdicts = classify(g, cap=cap or RECOGNIZE_CAP)
        _emit({k: bool(v) for k, v in verdicts.items()}, args.human)
        return EXIT_OK
    if args.cls == "gp-unimodal":
        res = recognize_Gp_unimodal_radius(g, args.p, cap=cap or UNIMODAL_CAP)
        out: dict[str, Any] = {"class": f"gp-unimodal p={args.p}", "holds": bool(res), "reason": res.reason}
        if not res:
            u, v = res.witness
            bad = build_violating_profile(g, u, v, args.p, cap=cap or UNIMODAL_CAP)
            out["witness"] = {"u": bad.u, "v": bad.v, "profile": _profile_json(bad.profile)}
        _emit(out, args.human)
        return EXIT_OK if res else EXIT_VIOLATED
    if args.cls not in CLASS_RECOGNIZERS:
        raise InputError(f"unknown class {args.cls!r}")
    res = CLASS_RECOGNIZERS[args.cls](g, cap=cap or RECOGNIZE_CAP)
    out = {"class": args.cls, "holds": bool(res), "reason": res.reason, "witness": res.witness}
    _emit(out, args.human)
    return EXIT_OK if res else EXIT_VIOLATED


# center


def cmd_center(args: argparse.Namespace) -> int:
    g = parse_graph(Path(args.graph))
    pi = parse_profile(Path(args.profile), g.n)
    delta = Fraction(args.delta) if args.delta is not None else None
    try:
        report = solve(
            g, pi, args.method, seed=args.seed, det01=args.det01, delta=delta, p=args.p, check=not args.no_check
        )
    except MethodMismatch as exc:
        _emit(
            {"error": str(exc), "class": exc.cls, "witness": exc.verdict.witness},
            args.human,
        )
        return EXIT_INPUT
    _emit(report.to_json(), args.human)
    return EXIT_OK


# verify


def _profiles(args: argparse.Namespace, g: Graph) -> list[Profile]:
    if args.profile:
        return [parse_profile(Path(args.profile), g.n)]
    if args.random:
        kind = "01" if args.zero_one else "weighted"
        return [gen_profile(g, kind, args.seed + i) for i in range(args.random)]
    raise InputError("give a profile file or --random K")


def _resolve_p(args: argparse.Namespace, g: Graph, d: np.ndarray, out: dict[str, Any]) -> int:
    if args.p == "hyp":
        delta = hyperbolicity_exact(g, dmat=d)
        out["delta"] = weight_json(delta)
        p = int(4 * delta) + 1 if (4 * delta).denominator == 1 else int(4 * delta) + 2
        out["p"] = p
        return p
    try:
        p = int(args.p)
    except ValueError:
        raise InputError(f"--p must be an integer or 'hyp', got {args.p!r}") from None
    out["p"] = p
    return p


def cmd_verify(args: argparse.Namespace) -> int:
    g = parse_graph(Path(args.graph))
    d = all_pairs(g)
    out: dict[str, Any] = {"property": args.property}
    holds = True
    if args.property in ("wp", "unimodal"):
        p = _resolve_p(args, g, d, out)
        profiles = _profiles(args, g)
        out["checked"] = 0
        for i, pi in enumerate(profiles):
            if args.property == "wp":
                rep = is_p_weakly_peakless(g, pi, p, dmat=d)
                ok, witness = rep.holds, (list(rep.pair) if rep.pair else None)
            else:
                ok, witness = is_Gp_unimodal_for_profile(g, pi, p, dmat=d)
            out["checked"] += 1
            if not ok:
                holds = False
                out["counterexample"] = {"profile_index": i, "profile": _profile_json(pi), "witness": witness}
                break
    elif args.property == "cb-balls":
        holds = ball_convexity_check(g, dmat=d, full=args.full)
    elif args.property == "helly-probe":
        sets = np.concatenate([d <= r for r in range(args.radius + 1)])
        holds = helly_family_check(sets)
        out["radius"] = args.radius
    elif args.property == "diam-rad":
        rng = np.random.default_rng(args.seed)
        k = args.random or 100
        out["alpha"] = args.alpha
        out["checked"] = k
        for _ in range(k):
            size = int(rng.integers(1, g.n + 1))
            subset = rng.choice(g.n, size=size, replace=False).tolist()
            res = verify_diam_rad_inequality(g, subset, args.alpha, dmat=d)
            if not res.holds:
                holds = False
                out["counterexample"] = {"subset": sorted(subset), "diam": res.diam, "rad": res.rad}
                break
    else:
        raise InputError(f"unknown property {args.property!r}")
    out["holds"] = holds
    _emit(out, args.human)
    return EXIT_OK if holds else EXIT_VIOLATED


# gen


def _parse_extra(tokens: list[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--"):
            raise InputError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(tokens):
                raise InputError(f"missing value for {tok}")
            val = tokens[i + 1]
            i += 2
        params[key.replace("-", "_")] = _coerce(val)
    return params


def _coerce(val: str) -> Any:
    for kind in (int, float):
        try:
            return kind(val)
        except ValueError:
            pass
    return val


def cmd_gen(args: argparse.Namespace, extra: list[str]) -> int:
    params = _parse_extra(extra)
    inst = gen_family(args.family, params, args.seed)
    if args.profile and inst.profile is None:
        inst = type(inst)(inst.spec, inst.graph, gen_profile(inst.graph, args.profile, args.seed), inst.extra, inst.unverified)
    if args.output:
        out = Path(args.output)
        stem = out.name[: -len(".graph")] if out.name.endswith(".graph") else out.name
        record = write_instance(inst, out.parent if str(out.parent) else ".", stem)
        _emit(record, args.human)
    else:
        record = inst.manifest()
        record["graph"] = format_graph(inst.graph)
        if inst.profile is not None:
            record["profile"] = _profile_json(inst.profile)
        _emit(record, args.human)
    return EXIT_OK


# bench


def _size_params(family: str, size: int) -> dict[str, Any]:
    key = {
        "square_grid": "rows",
        "king_grid": "rows",
        "triangular_grid": "side",
        "triangular_hexagon": "k",
        "hypercube": "r",
        "grid_plus_path": "k",
        "polyomino": "width",
        "b_n": "n",
        "b_hat_n": "n",
    }.get(family, "n")
    if family == "simplex_graph":
        return {"base": "tree", "size": size}
    return {key: size}


def bench_cell(cell: tuple[str, int, str, int, str, int]) -> dict[str, Any]:
    """One (family, size, method, seed) benchmark run.

    With ``calls > 0`` the improvement step of the method is timed from
    that many random vertices and ``millis`` is the mean per call.
    """
    family, size, method, seed, kind, calls = cell
    inst = gen_family(family, _size_params(family, size), seed)
    g = inst.graph
    pi = inst.profile if inst.profile is not None else gen_profile(g, kind, seed)
    row: dict[str, Any] = {"family": family, "n": g.n, "m": g.m, "method": method, "seed": seed}
    if calls > 0:
        if method not in STEPS:
            raise InputError(f"no improvement step for method {method!r}")
        step = STEPS[method]
        rng = np.random.default_rng(seed)
        starts = rng.choice(g.n, size=min(calls, g.n), replace=False).tolist()
        begin = time.perf_counter()
        for v in starts:
            step.fn(g, pi, int(v))
        elapsed = (time.perf_counter() - begin) * 1000.0
        row.update(radius="", steps=len(starts), millis=round(elapsed / len(starts), 3))
        return row
    rep = solve(g, pi, method, seed=seed, check=False)
    row.update(radius=weight_json(rep.radius), steps=rep.steps, millis=round(rep.millis, 3))
    return row


def bench_rows(
    families: list[str],
    sizes: list[int],
    methods: list[str],
    seeds: list[int],
    *,
    profile: str = "weighted",
    calls: int = 0,
    jobs: int = 1,
) -> list[dict[str, Any]]:
    cells = [(f, s, m, seed, profile, calls) for f in families for s in sizes for m in methods for seed in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(bench_cell, cells))
    return [bench_cell(c) for c in cells]


def cmd_bench(args: argparse.Namespace) -> int:
    def split(text: str) -> list[str]:
        return [t for t in text.split(",") if t]

    try:
        sizes = [int(s) for s in split(args.sizes)]
        seeds = [int(s) for s in split(args.seeds)]
    except ValueError as exc:
        raise InputError(f"bad number list: {exc}") from None
    rows = bench_rows(
        split(args.family), sizes, split(args.methods), seeds, profile=args.profile, calls=args.calls, jobs=args.jobs
    )
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    text = buf.getvalue()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    if args.human:
        width = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in CSV_FIELDS}
        print("  ".join(f"{f:>{width[f]}}" for f in CSV_FIELDS))
        for r in rows:
            print("  ".join(f"{str(r[f]):>{width[f]}}" for f in CSV_FIELDS))
    elif not args.output:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpcenter", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--human", action="store_true", help="print a table instead of JSON")
        return p

    p = common(sub.add_parser("recognize", help="decide class membership"))
    p.add_argument("graph")
    p.add_argument("cls", metavar="class", help=f"one of {', '.join(CLASS_RECOGNIZERS)}, gp-unimodal, all")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--cap", type=int, default=None, help="largest n to accept")

    p = common(sub.add_parser("center", help="compute a central vertex"))
    p.add_argument("graph")
    p.add_argument("profile")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--det01", action="store_true", help="deterministic descent for 0-1 profiles")
    p.add_argument("--delta", default=None, help="hyperbolicity bound for fpscan (default: exact)")
    p.add_argument("--p", type=int, default=1, help="brute step radius for fpscan")
    p.add_argument("--no-check", action="store_true", help="skip the class recognizer")

    p = common(sub.add_parser("verify", help="check a metric property with the oracle"))
    p.add_argument("graph")
    p.add_argument("profile", nargs="?")
    p.add_argument("--property", required=True, choices=("wp", "unimodal", "helly-probe", "cb-balls", "diam-rad"))
    p.add_argument("--p", default="2", help="integer, or 'hyp' for 4*delta+1")
    p.add_argument("--random", type=int, default=0, help="check K random profiles (or subsets)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-one", action="store_true", help="random 0-1 profiles")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--radius", type=int, default=1, help="largest ball radius for helly-probe")
    p.add_argument("--full", action="store_true", help="cb-balls: check every interval")

    p = common(sub.add_parser("gen", help="generate a certified instance; extra --key value pairs are parameters"))
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="graph file to write (profile and manifest alongside)")
    p.add_argument("--profile", choices=("weighted", "01"), default=None, help="attach a random profile")

    p = common(sub.add_parser("bench", help="time methods over a family and sizes; CSV output"))
    p.add_argument("--methods", required=True)
    p.add_argument("--family", required=True, help="comma-separated family names")
    p.add_argument("--sizes", required=True)
    p.add_argument("--seeds", default="0")
    p.add_argument("--profile", choices=("weighted", "01"), default="weighted")
    p.add_argument("--calls", type=int, default=0, help="time the improvement step from this many vertices")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "gen":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.command == "gen":
            return cmd_gen(args, extra)
        return {"recognize": cmd_recognize, "center": cmd_center, "verify": cmd_verify, "bench": cmd_bench}[
            args.command
        ](args)
    except InputError as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(json.dumps({"error": str(exc), "kind": "OSError"}), file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, GenerationError) as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
