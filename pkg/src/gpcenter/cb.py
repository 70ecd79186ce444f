"""Centers on graphs with convex balls.

Cliques of these graphs need not be outergated: a vertex whose projection
on a clique K is all of K may have no outergate, but it then sits at the
same distance from every vertex of K. Such vertices are detected by a
marking pass during one BFS from K, and the clique formula of the weakly
bridged case goes through with them counted separately.

The two-step search can stall at distance 2 from the center, so the exact
solver follows the descent with a shrinking-region phase.
"""

from __future__ import annotations

import math
from collections.abc import Collection
from dataclasses import dataclass

import numpy as np

from .bridged import _improve_ball2, _minimize_ball1, check_clique, clique_eccentricity_formula
from .descent import DescentTrace, ImproveStep, deterministic_descent_01, sample_select_descent
from .errors import InputError, InvariantViolation
from .graph import Graph, Profile, Weight, eccentricity_array, radius_at
from .outergates import OutergateMap, best_preneighbor_map


@dataclass(frozen=True)
class CliqueGateStatus:
    """Outergates of all vertices with respect to a clique.

    Attributes:
        clique: The clique K.
        gates: Best pre-neighbor map of K; an outergate for every
            unmarked vertex.
        marked: Vertices with no outergate.
        witness: A 2-outergate of each marked vertex.
    """

    clique: tuple[int, ...]
    gates: OutergateMap
    marked: frozenset[int]
    witness: dict[int, int]

    def has_outergate(self, z: int) -> bool:
        return z not in self.marked


def clique_gate_status(g: Graph, K: Collection[int]) -> CliqueGateStatus:
    """Find the vertices without an outergate with respect to a clique.

    At distance 2 from K, z is marked when some neighbor of z in ``N(K)``
    is neither its chosen pre-neighbor z* nor adjacent to it. Further out,
    z is marked when a marked neighbor one layer closer has a pre-neighbor
    with as many neighbors in K as z*. A marked vertex at distance 2 is its
    own 2-outergate; farther ones inherit the witness.
    """
    ks = check_clique(g, K)
    gates = best_preneighbor_map(g, ks)
    dist = gates.dist
    best, score = gates.best, gates.score
    adj, adjsets = g.adjacency, g.adjsets
    witness: dict[int, int] = {}
    for z in np.argsort(dist, kind="stable").tolist():
        d = int(dist[z])
        if d < 2:
            continue
        zs = best[z]
        if d == 2:
            if any(dist[y] == 1 and y != zs and y not in adjsets[zs] for y in adj[z]):
                witness[z] = z
            continue
        for x in adj[z]:
            if dist[x] == d - 1 and x in witness and score[best[x]] == score[zs]:
                witness[z] = witness[x]
                break
    return CliqueGateStatus(tuple(ks), gates, frozenset(witness), witness)


def clique_eccentricities_cb(g: Graph, pi: Profile, K: Collection[int]) -> dict[int, Weight]:
    """Radius function on every vertex of a clique, in one pass."""
    st = clique_gate_status(g, K)
    return clique_eccentricity_formula(g, pi, st.clique, st.gates, without_gate=st.marked)


def minimize_ball1_cb(g: Graph, pi: Profile, v: int) -> int:
    """Minimizer of the radius function over ``B_1(v)``, smallest on ties
    among improving neighbors; v when v is a local minimum."""
    return _minimize_ball1(g, pi, v, clique_eccentricities_cb)[0]


def improve_eccentricity_cb(g: Graph, pi: Profile, v: int) -> int:
    """A vertex of ``B_2(v)`` with a smaller value, or v.

    Returning v does not certify v: every better vertex may lie at distance
    exactly 2.
    """
    return _improve_ball2(g, pi, v, clique_eccentricities_cb)


CB_STEP = ImproveStep(improve_eccentricity_cb, 2, "cb")


def terminal_vertex(g: Graph, pi: Profile, mode: str = "randomized", seed: int = 0) -> DescentTrace:
    """Descend with :data:`CB_STEP` from a sampled start (``"randomized"``)
    or from the best vertex of a ball cover (``"deterministic01"``)."""
    if mode == "randomized":
        return sample_select_descent(g, pi, CB_STEP, seed)
    if mode == "deterministic01":
        return deterministic_descent_01(g, pi, CB_STEP)
    raise InputError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class CBCenter:
    center: int
    radius: Weight
    terminal: DescentTrace
    iterations: int
    branch: str


def _locally_convex(g: Graph, X: np.ndarray) -> bool:
    """Connected, and no outside vertex has two nonadjacent neighbors in X;
    equivalent to convexity on graphs with convex balls."""
    members = np.flatnonzero(X).tolist()
    if not members:
        return True
    for b in np.flatnonzero(~X).tolist():
        inside = [a for a in g.adjacency[b] if X[a]]
        for i, a in enumerate(inside):
            if any(c not in g.adjsets[a] for c in inside[i + 1 :]):
                return False
    seen = {members[0]}
    stack = [members[0]]
    while stack:
        a = stack.pop()
        for c in g.adjacency[a]:
            if X[c] and c not in seen:
                seen.add(c)
                stack.append(c)
    return len(seen) == len(members)


def center_cb(
    g: Graph,
    pi: Profile,
    seed: int = 0,
    *,
    mode: str = "randomized",
    check: bool = False,
    degree_threshold: float | None = None,
) -> CBCenter:
    """A central vertex of a graph with convex balls.

    After the descent, keeps a region X containing every vertex better
    than the best seen so far, an anchor x in X and that best vertex y.
    Around a low-degree anchor the 1-balls of its closed neighborhood in X
    are scanned and the answer is final. Around a high-degree anchor X is
    cut to the part strictly closer to a furthest vertex of x than x is,
    and the anchor moves to the nearest vertex of the new region.

    ``mode`` selects how the terminal vertex is found (see
    :func:`terminal_vertex`). ``check=True`` asserts the three region properties every round against
    a full table of values, and convexity of X. ``degree_threshold``
    defaults to ``sqrt(m)``.
    """
    pi.validate(g)
    trace = terminal_vertex(g, pi, mode, seed)
    x = y = trace.center
    ry = trace.radius
    X = np.ones(g.n, dtype=bool)
    limit = math.sqrt(g.m) if degree_threshold is None else degree_threshold
    table = eccentricity_array(g, pi) if check else None
    anchors: set[int] = set()
    it = 0
    while True:
        if not X.any():
            return CBCenter(y, ry, trace, it, "empty")
        if table is not None:
            _check_state(g, table, X, x, y)
        dx = g.bfs(x)
        inside = [w for w in g.adjacency[x] if X[w]]
        if len(inside) <= limit:
            best, rbest = y, ry
            for w in [x, *inside]:
                u, ru = _minimize_ball1(g, pi, w, clique_eccentricities_cb)
                if (ru, u) < (rbest, best):
                    best, rbest = u, ru
            return CBCenter(best, radius_at(g, pi, best).value, trace, it, "scan")
        if x in anchors:
            raise InvariantViolation(f"anchor {x} repeated")
        anchors.add(x)
        it += 1
        ev = radius_at(g, pi, x, dx)
        z = min(ev.furthest)
        dz = g.bfs(z)
        X = X & (dz <= dz[x] - 1)
        if (ev.value, x) < (ry, y):
            y, ry = x, ev.value
        if X.any():
            cand = np.flatnonzero(X)
            x = int(cand[np.argmin(dx[cand])])


def _check_state(g: Graph, table: np.ndarray, X: np.ndarray, x: int, y: int) -> None:
    if not X[x]:
        raise InvariantViolation(f"anchor {x} left the region")
    outside = table[~X]
    if outside.size and outside.min() < table[y]:
        raise InvariantViolation("a vertex outside the region beats the best vertex")
    rad = table.min()
    if table[y] != rad:
        centers = np.flatnonzero(table == rad)
        dx = g.bfs(x)
        if (dx[centers] > 2).any():
            raise InvariantViolation(f"center not within distance 2 of anchor {x}")
    if not _locally_convex(g, X):
        raise InvariantViolation("region is not convex")
