"""Recognizers for the graph classes the solvers target.

All recognizers read an exact all-pairs distance matrix and inspect the
defining local conditions directly, vectorized over one of the vertices
involved. Each returns a :class:`Recognition` carrying a witness when the
answer is negative.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import NoWitnessError
from .graph import Graph, Profile
from .oracle import _check_cap, all_pairs

RECOGNIZE_CAP = 500
UNIMODAL_CAP = 300


@dataclass(frozen=True)
class Recognition:
    holds: bool
    reason: str = ""
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


YES = Recognition(True)


def _dist(g: Graph, dmat: np.ndarray | None, cap: int | None, what: str) -> np.ndarray:
    if dmat is not None:
        return dmat
    _check_cap(g, cap, what)
    return all_pairs(g, cap=None)


def _triangle(g: Graph) -> tuple[int, int, int] | None:
    adj = g.adjsets
    for x, y in g.edges():
        common = adj[x] & adj[y]
        if common:
            return (x, y, min(common))
    return None


def _quadrangle_condition(g: Graph, d: np.ndarray) -> tuple[int, ...] | None:
    adj = g.adjsets
    for u in range(g.n):
        nb = g.adjacency[u]
        for i, x in enumerate(nb):
            for y in nb[i + 1 :]:
                if y in adj[x]:
                    continue
                below = (d[x] == d[y]) & (d[u] == d[x] + 1)
                if not below.any():
                    continue
                common = sorted((adj[x] & adj[y]) - {u})
                if common:
                    ok = (d[common] == d[x] - 1).any(axis=0)
                    bad = np.flatnonzero(below & ~ok)
                else:
                    bad = np.flatnonzero(below)
                if bad.size:
                    return (int(bad[0]), u, x, y)
    return None


def is_weakly_modular(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Triangle and quadrangle conditions for every base vertex."""
    d = _dist(g, dmat, cap, "is_weakly_modular")
    for x, y in g.edges():
        level = d[x] == d[y]
        if not level.any():
            continue
        common = sorted(g.adjsets[x] & g.adjsets[y])
        ok = (d[common] == d[x] - 1).any(axis=0) if common else np.zeros(g.n, dtype=bool)
        bad = np.flatnonzero(level & ~ok)
        if bad.size:
            return Recognition(False, "triangle condition", (int(bad[0]), x, y))
    w = _quadrangle_condition(g, d)
    if w is not None:
        return Recognition(False, "quadrangle condition", w)
    return YES


def is_bipartite(g: Graph) -> Recognition:
    side = g.bfs(0) % 2
    for x, y in g.edges():
        if side[x] == side[y]:
            return Recognition(False, "odd cycle", (x, y))
    return YES


def is_modular(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Modular graphs are exactly the triangle-free weakly modular graphs."""
    t = _triangle(g)
    if t is not None:
        return Recognition(False, "triangle", t)
    return is_weakly_modular(g, dmat=dmat, cap=cap)


def _wedges(g: Graph) -> dict[tuple[int, int], list[int]]:
    """Common neighbors of every nonadjacent pair that has some."""
    adj = g.adjsets
    common: dict[tuple[int, int], list[int]] = defaultdict(list)
    for u in range(g.n):
        for x, y in combinations(g.adjacency[u], 2):
            if y not in adj[x]:
                common[(x, y)].append(u)
    return common


def is_median(
    g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP, method: str = "local"
) -> Recognition:
    """Median graphs: every triple has exactly one median.

    ``method="local"`` uses the characterization as modular graphs without
    induced K_{2,3}; ``method="triples"`` checks every triple directly.
    """
    d = _dist(g, dmat, cap, "is_median")
    if method == "triples":
        return _median_triples(d)
    res = is_modular(g, dmat=d)
    if not res:
        return res
    for (x, y), c in _wedges(g).items():
        if len(c) >= 3:
            return Recognition(False, "induced K23", (x, y, *c[:3]))
    return YES


def _median_triples(d: np.ndarray) -> Recognition:
    n = d.shape[0]
    for u in range(n):
        for v in range(u, n):
            iuv = d[u] + d[v] == d[u, v]
            for w in range(v, n):
                iuw = d[u] + d[w] == d[u, w]
                ivw = d[v] + d[w] == d[v, w]
                k = int((iuv & iuw & ivw).sum())
                if k != 1:
                    return Recognition(False, f"triple with {k} medians", (u, v, w))
    return YES


def is_cube_free_median(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Median and no 3-cube: in a median graph a vertex with three neighbors
    that pairwise span squares lies in a cube."""
    res = is_median(g, dmat=dmat, cap=cap)
    if not res:
        return res
    wedges = _wedges(g)
    for u in range(g.n):
        nb = g.adjacency[u]
        sq = {(x, y) for x, y in combinations(nb, 2) if len(wedges.get((x, y), ())) >= 2}
        for x, y, z in combinations(nb, 3):
            if (x, y) in sq and (x, z) in sq and (y, z) in sq:
                return Recognition(False, "3-cube", (u, x, y, z))
    return YES


def _induced_c4(g: Graph) -> tuple[int, ...] | None:
    adj = g.adjsets
    for (x, y), c in _wedges(g).items():
        for a, b in combinations(c, 2):
            if b not in adj[a]:
                return (x, a, y, b)
    return None


def _induced_c5(g: Graph) -> tuple[int, ...] | None:
    n = g.n
    nb = [sum(1 << w for w in g.adjacency[v]) for v in range(n)]
    nbc = [nb[v] | (1 << v) for v in range(n)]
    for a in range(n):
        for b, e in combinations(g.adjacency[a], 2):
            if nb[b] >> e & 1:
                continue
            cands = nb[b] & ~nbc[a] & ~nbc[e]
            while cands:
                low = cands & -cands
                c = low.bit_length() - 1
                cands ^= low
                ds = nb[c] & nb[e] & ~nbc[a] & ~nbc[b]
                if ds:
                    return (a, b, c, (ds & -ds).bit_length() - 1, e)
    return None


def is_weakly_bridged(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Weakly modular without induced 4-cycles."""
    _check_cap(g, cap if dmat is None else None, "is_weakly_bridged")
    c4 = _induced_c4(g)
    if c4 is not None:
        return Recognition(False, "induced C4", c4)
    return is_weakly_modular(g, dmat=dmat, cap=None)


def is_bridged(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Weakly modular without induced 4- and 5-cycles."""
    _check_cap(g, cap if dmat is None else None, "is_bridged")
    c4 = _induced_c4(g)
    if c4 is not None:
        return Recognition(False, "induced C4", c4)
    c5 = _induced_c5(g)
    if c5 is not None:
        return Recognition(False, "induced C5", c5)
    return is_weakly_modular(g, dmat=dmat, cap=None)


def _pentagon(g: Graph, d: np.ndarray, v: int, x: int, y: int) -> bool:
    k = int(d[v, x])
    if k < 2:
        return False
    adj = g.adjsets
    wx = [w for w in g.adjacency[x] if d[v, w] == k - 1]
    wy = [w for w in g.adjacency[y] if d[v, w] == k - 1]
    for w in wx:
        for w2 in wy:
            if w != w2 and any(d[v, z] == k - 2 for z in adj[w] & adj[w2]):
                return True
    return False


def is_cb_graph(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Graphs with convex balls: interval neighborhoods are cliques and the
    triangle-or-pentagon condition holds."""
    d = _dist(g, dmat, cap, "is_cb_graph")
    adj = g.adjsets
    for v in range(g.n):
        for x, y in combinations(g.adjacency[v], 2):
            if y in adj[x]:
                continue
            bad = np.flatnonzero((d[x] == d[v] - 1) & (d[y] == d[v] - 1))
            if bad.size:
                return Recognition(False, "interval neighborhood not a clique", (int(bad[0]), v, x, y))
    for x, y in g.edges():
        level = d[x] == d[y]
        if not level.any():
            continue
        common = sorted(adj[x] & adj[y])
        ok = (d[common] == d[x] - 1).any(axis=0) if common else np.zeros(g.n, dtype=bool)
        for v in np.flatnonzero(level & ~ok).tolist():
            if not _pentagon(g, d, v, x, y):
                return Recognition(False, "triangle-pentagon condition", (v, x, y))
    return YES


def _interval_outergate_failure(g: Graph, d: np.ndarray, min_dist: int) -> tuple[int, int] | None:
    """First pair (u, v) with ``d(u, v) >= min_dist`` such that no vertex of
    ``I(u, v)`` at distance 2 from v is adjacent to all neighbors of v in
    ``I(u, v)``."""
    for v in range(g.n):
        n1 = np.array(g.adjacency[v], dtype=np.int64)
        n2 = np.flatnonzero(d[v] == 2)
        far = np.flatnonzero(d[v] >= min_dist)
        if far.size == 0:
            continue
        if n2.size == 0:
            return (int(far[0]), v)
        dvf = d[far, v][:, None]
        lower = (d[np.ix_(far, n1)] == dvf - 1).astype(np.float32)
        nonadj = np.ones((n2.size, n1.size), dtype=np.float32)
        for i, x in enumerate(n2.tolist()):
            for j, w in enumerate(n1.tolist()):
                if w in g.adjsets[x]:
                    nonadj[i, j] = 0.0
        misses = lower @ nonadj.T > 0.5
        inside = d[np.ix_(far, n2)] == dvf - 2
        ok = (inside & ~misses).any(axis=1)
        if not ok.all():
            return (int(far[np.flatnonzero(~ok)[0]]), v)
    return None


def has_interval_outergate_property(
    g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP
) -> Recognition:
    d = _dist(g, dmat, cap, "has_interval_outergate_property")
    pair = _interval_outergate_failure(g, d, 2)
    if pair is not None:
        return Recognition(False, "no interval outergate", pair)
    return YES


def is_bipartite_helly(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = RECOGNIZE_CAP) -> Recognition:
    """Bipartite, modular, and for every pair at distance at least 3 the
    neighbors of v in ``I(u, v)`` have a second common neighbor in ``I(u, v)``."""
    res = is_bipartite(g)
    if not res:
        return res
    d = _dist(g, dmat, cap, "is_bipartite_helly")
    res = is_modular(g, dmat=d)
    if not res:
        return res
    pair = _interval_outergate_failure(g, d, 3)
    if pair is not None:
        return Recognition(False, "interval neighbors lack a second common neighbor", pair)
    return YES


def bipartition(g: Graph) -> np.ndarray:
    return (g.bfs(0) % 2).astype(np.int8)


# ---------------------------------------------------------------------------
# unimodality of all radius functions in a graph power


def _uc_pairs(d: np.ndarray, u: int, p: int) -> np.ndarray:
    """Vertices v with ``d(u, v) > p`` satisfying the unimodality-breaking
    condition for (u, v)."""
    ball = np.flatnonzero(d[u] <= p)
    far = np.flatnonzero(d[u] > p)
    if far.size == 0:
        return far
    dx = d[ball]
    reach = dx >= d[u][None, :]
    hit = reach[None, :, :] & (dx[None, :, :] > d[far][:, None, :])
    return far[hit.any(axis=2).all(axis=1)]


def recognize_Gp_unimodal_radius(
    g: Graph, p: int, *, dmat: np.ndarray | None = None, cap: int | None = UNIMODAL_CAP
) -> Recognition:
    """Decide whether every radius function on ``g`` is unimodal in the
    p-th power graph. A negative answer carries a pair (u, v) from which
    :func:`build_violating_profile` constructs a counterexample."""
    d = _dist(g, dmat, cap, "recognize_Gp_unimodal_radius")
    for u in range(g.n):
        bad = _uc_pairs(d, u, p)
        if bad.size:
            return Recognition(False, "violating pair", (u, int(bad[0])))
    return YES


@dataclass(frozen=True)
class ViolatingProfile:
    u: int
    v: int
    profile: Profile


def build_violating_profile(
    g: Graph, u: int, v: int, p: int, *, dmat: np.ndarray | None = None, cap: int | None = UNIMODAL_CAP
) -> ViolatingProfile:
    """Profile with value 1 at u, below 1 at v, and u a local minimum in the
    p-th power.

    Each x in ``B_p(u)`` picks the smallest w with ``d(x, w) >= d(u, w)``
    and ``d(x, w) > d(v, w)``; w gets weight ``1 / min d(x, w)`` over the
    x that picked it.
    """
    d = _dist(g, dmat, cap, "build_violating_profile")
    if d[u, v] <= p:
        raise NoWitnessError(f"d({u}, {v}) = {d[u, v]} is not above p={p}")
    closest: dict[int, int] = {}
    for x in np.flatnonzero(d[u] <= p).tolist():
        ok = np.flatnonzero((d[x] >= d[u]) & (d[x] > d[v]))
        if ok.size == 0:
            raise NoWitnessError(f"no witness vertex for x={x}")
        w = int(ok[0])
        closest[w] = min(closest.get(w, int(d[x, w])), int(d[x, w]))
    return ViolatingProfile(u, v, Profile({w: Fraction(1, k) for w, k in closest.items()}))


CLASS_RECOGNIZERS = {
    "weakly-bridged": is_weakly_bridged,
    "bridged": is_bridged,
    "cb": is_cb_graph,
    "bipartite-helly": is_bipartite_helly,
    "cube-free-median": is_cube_free_median,
    "median": is_median,
    "modular": is_modular,
    "weakly-modular": is_weakly_modular,
}


def classify(g: Graph, *, cap: int | None = RECOGNIZE_CAP) -> dict[str, Recognition]:
    """Run every class recognizer on a shared distance matrix."""
    _check_cap(g, cap, "classify")
    d = all_pairs(g, cap=None)
    return {name: fn(g, dmat=d) for name, fn in CLASS_RECOGNIZERS.items()}
