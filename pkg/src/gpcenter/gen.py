"""Certified instance generation.

Every family declares the graph classes it belongs to, and every emitted
instance is checked against those classes by the recognizers on a shared
distance matrix. Random families are resampled on failure; deterministic
ones raise :class:`GenerationError`. Above ``CERTIFY_CAP`` vertices the
all-pairs matrix is not built and the claims are recorded as unverified
in the instance instead.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import families as fam
from .errors import GenerationError, InputError
from .graph import Graph, Profile, radius_at
from .io import write_graph, write_profile
from .oracle import all_pairs
from .recognize import CLASS_RECOGNIZERS, is_bipartite

CERTIFY_CAP = 4000
RESAMPLE_ATTEMPTS = 20

CERTIFIERS: dict[str, Callable[..., Any]] = {
    **CLASS_RECOGNIZERS,
    "bipartite": lambda g, dmat=None: is_bipartite(g),
}

TREE_CLASSES = ("bridged", "weakly-bridged", "cb", "bipartite-helly", "cube-free-median", "median")
BRIDGED_CLASSES = ("bridged", "weakly-bridged", "cb", "weakly-modular")
GRID_CLASSES = ("bipartite-helly", "cube-free-median", "median", "modular")


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: dict[str, Any]
    seed: int
    classes: tuple[str, ...]


@dataclass(frozen=True)
class Instance:
    """A generated graph with its optional profile and named vertices.

    ``unverified`` lists claimed classes that were not checked because the
    graph is above the certification cap.
    """

    spec: InstanceSpec
    graph: Graph
    profile: Profile | None = None
    extra: dict[str, Any] = field(default_factory=dict)
    unverified: tuple[str, ...] = ()

    def manifest(self) -> dict[str, Any]:
        return {
            "family": self.spec.family,
            "params": self.spec.params,
            "seed": self.spec.seed,
            "classes": list(self.spec.classes),
            "unverified": list(self.unverified),
            "n": self.graph.n,
            "m": self.graph.m,
            **({"extra": self.extra} if self.extra else {}),
        }


Built = tuple[Graph, Profile | None, dict[str, Any]]


@dataclass(frozen=True)
class Family:
    build: Callable[[Mapping[str, Any], int], Built]
    claims: Callable[[Mapping[str, Any]], tuple[str, ...]]
    random: bool = False


def _grow(n: int, seed: int, pieces: list[Callable[[np.random.Generator], Graph]]) -> Graph:
    """One-sum of random pieces until the total reaches about n vertices."""
    rng = np.random.default_rng(seed)
    parts: list[Graph] = []
    total = 1
    while total < n:
        h = pieces[int(rng.integers(0, len(pieces)))](rng)
        parts.append(h)
        total += h.n - 1
    return fam.one_sum(parts, seed)


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**31))


def _wb_pieces() -> list[Callable[[np.random.Generator], Graph]]:
    return [
        lambda r: fam.wheel(5),
        lambda r: fam.triangular_grid(int(r.integers(1, 4))),
        lambda r: fam.random_chordal(int(r.integers(6, 20)), _seed(r)),
        lambda r: fam.triangular_hexagon(1),
    ]


def _cb_pieces() -> list[Callable[[np.random.Generator], Graph]]:
    return [
        lambda r: fam.cycle(5),
        lambda r: fam.cycle(5),
        lambda r: fam.wheel(5),
        lambda r: fam.complete(3),
        lambda r: fam.random_tree(int(r.integers(2, 8)), _seed(r)),
        lambda r: fam.triangular_grid(2),
    ]


def _bh_pieces() -> list[Callable[[np.random.Generator], Graph]]:
    return [
        lambda r: fam.square_grid(int(r.integers(2, 6)), int(r.integers(2, 6))),
        lambda r: fam.b_hat_n(int(r.integers(3, 6))),
        lambda r: fam.random_tree(int(r.integers(2, 10)), _seed(r)),
        lambda r: fam.staircase_polyomino(int(r.integers(2, 6)), _seed(r)),
    ]


def _random_bipartite_connected(a: int, b: int, p: float, seed: int) -> Graph:
    """Alternating path through both sides plus random cross edges."""
    rng = np.random.default_rng(seed)
    k = min(a, b)
    edges = {(i, a + i) for i in range(k)} | {(i + 1, a + i) for i in range(k - 1)}
    edges |= {(i, a + k - 1) for i in range(k, a)} | {(k - 1, a + j) for j in range(k, b)}
    edges |= {(i, a + j) for i in range(a) for j in range(b) if rng.random() < p}
    return Graph(a + b, sorted(edges))


def _simplex(params: Mapping[str, Any], seed: int) -> Built:
    base = params.get("base", "tree")
    size = int(params.get("size", 10))
    if base == "tree":
        h = fam.random_tree(size, seed)
    elif base == "cycle":
        h = fam.cycle(size)
    elif base == "grid":
        h = fam.square_grid(size, size)
    elif base == "bipartite":
        h = _random_bipartite_connected(size, size, float(params.get("p", 0.2)), seed)
    else:
        raise InputError(f"unknown simplex base {base!r}")
    return fam.simplex_graph(h), None, {}


def _cycle_claims(params: Mapping[str, Any]) -> tuple[str, ...]:
    n = int(params["n"])
    if n == 3:
        return BRIDGED_CLASSES
    if n == 4:
        return GRID_CLASSES
    if n == 5:
        return ("cb",)
    return ()


def _hypercube(params: Mapping[str, Any], seed: int) -> Built:
    r = int(params["r"])
    g = fam.hypercube(r)
    far = g.n - 1
    return g, Profile({x: 1 for x in range(g.n) if x not in (0, far)}), {"u": 0, "v": far}


def _grid_plus_path(params: Mapping[str, Any], seed: int) -> Built:
    gp = fam.grid_plus_path(int(params.get("k", 4)))
    return gp.graph, gp.profile, dict(gp.labels)


def _parse_family(text: Any) -> list[frozenset[int]]:
    if isinstance(text, str):
        out = []
        for part in text.split(";"):
            part = part.strip().strip("{}")
            if not part:
                raise InputError("empty set in set family")
            out.append(frozenset(int(t) for t in part.split(",")))
        return out
    return [frozenset(s) for s in text]


def _hse(params: Mapping[str, Any], seed: int) -> Built:
    X = _parse_family(params["x"])
    Y = _parse_family(params["y"])
    elems = sorted(set().union(*X, *Y))
    if "universe" in params:
        nu = int(params["universe"])
        index = {e: e for e in range(nu)}
    else:
        index = {e: i for i, e in enumerate(elems)}
        nu = len(elems)
    try:
        X = [frozenset(index[e] for e in s) for s in X]
        Y = [frozenset(index[e] for e in s) for s in Y]
    except KeyError as exc:
        raise InputError(f"element {exc.args[0]} outside the universe") from None
    gad = fam.hse_gadget(X, Y, nu)
    rv = radius_at(gad.graph, gad.profile, gad.v).value
    if rv != 3:
        raise GenerationError(f"gadget vertex v has value {rv}, expected 3")
    return gad.graph, gad.profile, {"v": gad.v, "hitting_set": fam.has_hitting_set(gad.X, gad.Y)}


FAMILIES: dict[str, Family] = {
    "path": Family(lambda p, s: (fam.path(int(p["n"])), None, {}), lambda p: TREE_CLASSES),
    "tree": Family(lambda p, s: (fam.random_tree(int(p["n"]), s), None, {}), lambda p: TREE_CLASSES, True),
    "cycle": Family(lambda p, s: (fam.cycle(int(p["n"])), None, {}), _cycle_claims),
    "square_grid": Family(
        lambda p, s: (fam.square_grid(int(p["rows"]), int(p.get("cols", p["rows"]))), None, {}),
        lambda p: GRID_CLASSES,
    ),
    "triangular_grid": Family(
        lambda p, s: (fam.triangular_grid(int(p["side"]), p.get("other")), None, {}), lambda p: BRIDGED_CLASSES
    ),
    "triangular_hexagon": Family(lambda p, s: (fam.triangular_hexagon(int(p["k"])), None, {}), lambda p: BRIDGED_CLASSES),
    "king_grid": Family(
        lambda p, s: (fam.king_grid(int(p["rows"]), int(p.get("cols", p["rows"]))), None, {}),
        lambda p: ("weakly-modular",),
    ),
    "hypercube": Family(_hypercube, lambda p: ("median", "modular")),
    "simplex_graph": Family(_simplex, lambda p: ("cube-free-median", "median"), True),
    "b_n": Family(lambda p, s: (fam.b_n(int(p["n"])), None, {}), lambda p: ("bipartite",)),
    "b_hat_n": Family(lambda p, s: (fam.b_hat_n(int(p["n"])), None, {}), lambda p: ("bipartite-helly",)),
    "grid_plus_path": Family(_grid_plus_path, lambda p: ("cube-free-median", "median")),
    "hse": Family(_hse, lambda p: ()),
    "pentagon_tail": Family(lambda p, s: (fam.pentagon_tail(int(p["n"]), s), None, {}), lambda p: ("cb",), True),
    "chordal": Family(
        lambda p, s: (fam.random_chordal(int(p["n"]), s, int(p.get("max_clique", 4))), None, {}),
        lambda p: ("bridged", "weakly-bridged", "cb"),
        True,
    ),
    "polyomino": Family(
        lambda p, s: (fam.staircase_polyomino(int(p["width"]), s), None, {}),
        lambda p: ("bipartite-helly", "cube-free-median"),
        True,
    ),
    "wb_one_sum": Family(
        lambda p, s: (_grow(int(p["n"]), s, _wb_pieces()), None, {}), lambda p: ("weakly-bridged", "cb"), True
    ),
    "cb_one_sum": Family(lambda p, s: (_grow(int(p["n"]), s, _cb_pieces()), None, {}), lambda p: ("cb",), True),
    "bh_one_sum": Family(
        lambda p, s: (_grow(int(p["n"]), s, _bh_pieces()), None, {}), lambda p: ("bipartite-helly",), True
    ),
}


def certify(g: Graph, classes: tuple[str, ...], *, cap: int = CERTIFY_CAP) -> tuple[str, ...]:
    """Check g against each class; returns the classes left unverified
    because g is above the cap. Raises :class:`GenerationError` on the first
    failed class."""
    if not classes:
        return ()
    if g.n > cap:
        return classes
    d = all_pairs(g, cap=None)
    for name in classes:
        res = CERTIFIERS[name](g, dmat=d)
        if not res:
            raise GenerationError(f"instance is not {name}: {getattr(res, 'reason', '')}")
    return ()


def gen_family(family: str, params: Mapping[str, Any] | None = None, seed: int = 0, *, cap: int = CERTIFY_CAP) -> Instance:
    """Build and certify one instance of a named family.

    Random families that fail certification are rebuilt with derived
    seeds; the seed actually used is recorded in the spec.
    """
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    spec_fam = FAMILIES[family]
    params = dict(params or {})
    claims = spec_fam.claims(params)
    attempts = RESAMPLE_ATTEMPTS if spec_fam.random else 1
    last: GenerationError | None = None
    for k in range(attempts):
        s = seed + 7919 * k
        try:
            g, pi, extra = spec_fam.build(params, s)
        except KeyError as exc:
            raise InputError(f"family {family!r} needs parameter {exc.args[0]!r}") from None
        try:
            unverified = certify(g, claims, cap=cap)
        except GenerationError as exc:
            last = exc
            continue
        return Instance(InstanceSpec(family, params, s, claims), g, pi, extra, unverified)
    raise GenerationError(f"{family} {params} seed {seed}: {last}")


def gen_profile(g: Graph, kind: str = "weighted", seed: int = 0) -> Profile:
    """Random profile: ``"weighted"`` (integers in [1, 10]) or ``"01"``."""
    if kind not in ("weighted", "01"):
        raise InputError(f"unknown profile kind {kind!r}")
    return fam.random_profile(g, seed, zero_one=kind == "01")


def gen_hse(x_sets: Any, y_sets: Any, universe: int | None = None) -> Instance:
    params: dict[str, Any] = {"x": x_sets, "y": y_sets}
    if universe is not None:
        params["universe"] = universe
    return gen_family("hse", params)


def random_hse(seed: int, max_universe: int = 12) -> Instance:
    """Gadget for random set families over a universe of 2 to
    ``max_universe`` elements; both families cover the universe."""
    rng = np.random.default_rng(seed)
    nu = int(rng.integers(2, max_universe + 1))

    def family() -> list[list[int]]:
        sets = []
        for _ in range(int(rng.integers(1, 5))):
            size = int(rng.integers(1, max(2, nu // 2) + 1))
            sets.append(sorted(rng.choice(nu, size=size, replace=False).tolist()))
        missing = sorted(set(range(nu)) - set().union(*map(set, sets)))
        if missing:
            sets.append(missing)
        return sets

    return gen_hse(family(), family(), nu)


CORPUS_CLASSES = ("weakly-bridged", "bridged", "cb", "bipartite-helly", "cube-free-median")


def _sizes(count: int, lo: int, hi: int) -> list[int]:
    return [int(x) for x in np.geomspace(lo, hi, count).round()]


def corpus(cls: str, count: int = 20, max_n: int = 150, seed: int = 0) -> list[Instance]:
    """``count`` certified instances of a class, spread over sizes from
    about 12 up to ``max_n`` vertices and cycling through families."""
    if cls not in CORPUS_CLASSES:
        raise InputError(f"unknown corpus class {cls!r}")
    out: list[Instance] = []
    for i, n in enumerate(_sizes(count, 12, max_n)):
        s = seed + 101 * i
        side = max(2, int(round(np.sqrt(n))) - 1)
        if cls == "weakly-bridged":
            choice = [
                ("wb_one_sum", {"n": n}),
                ("chordal", {"n": n}),
                ("triangular_grid", {"side": side}),
                ("triangular_hexagon", {"k": max(1, int(round(np.sqrt(n / 3))) - 1)}),
            ][i % 4]
        elif cls == "bridged":
            choice = [
                ("triangular_grid", {"side": side, "other": max(1, side // 2)}),
                ("chordal", {"n": n}),
                ("triangular_hexagon", {"k": max(1, int(round(np.sqrt(n / 3))) - 1)}),
                ("tree", {"n": n}),
            ][i % 4]
        elif cls == "cb":
            choice = [("pentagon_tail", {"n": n}), ("cb_one_sum", {"n": n})][i % 2]
        elif cls == "bipartite-helly":
            choice = [
                ("square_grid", {"rows": side + 1, "cols": max(2, (n // (side + 1)))}),
                ("bh_one_sum", {"n": n}),
                ("polyomino", {"width": max(2, int(round(np.sqrt(n))))}),
                ("tree", {"n": n}),
            ][i % 4]
        else:
            choice = [
                ("square_grid", {"rows": side + 1, "cols": max(2, (n // (side + 1)))}),
                ("simplex_graph", {"base": "bipartite", "size": max(3, n // 8), "p": 0.15}),
                ("polyomino", {"width": max(2, int(round(np.sqrt(n))))}),
                ("simplex_graph", {"base": "tree", "size": max(3, n // 2)}),
                ("tree", {"n": n}),
            ][i % 5]
        out.append(gen_family(choice[0], choice[1], s))
    return out


def write_instance(inst: Instance, outdir: str | Path, stem: str, *, manifest: str = "manifest.jsonl") -> dict[str, Any]:
    """Write ``stem.graph`` (and ``stem.profile``) and append a manifest line."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"graph": f"{stem}.graph"}
    write_graph(inst.graph, out / files["graph"])
    if inst.profile is not None:
        files["profile"] = f"{stem}.profile"
        write_profile(inst.profile, out / files["profile"])
    record = {**inst.manifest(), "files": files}
    with open(out / manifest, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True, default=_jsonable) + "\n")
    return record


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
