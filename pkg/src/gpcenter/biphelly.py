"""Improvement steps for bipartite Helly graphs."""

from __future__ import annotations

import heapq
from collections.abc import Iterable
from fractions import Fraction

from .descent import ImproveStep
from .errors import InputError, InvariantViolation
from .graph import Graph, Profile, Weight, radius_at
from .outergates import best_preneighbor_map
from .recognize import bipartition


def _ball_gate_map(g: Graph, v: int):
    return best_preneighbor_map(g, (v, *g.adjacency[v]))


def _minimize_ball1_bh(g: Graph, pi: Profile, v: int) -> tuple[int, Weight, object]:
    dist = g.bfs(v)
    ev = radius_at(g, pi, v, dist)
    rv = ev.value
    if rv == 0:
        return v, rv, (dist, ev)
    heavy = [z for z, w in pi.weights.items() if w * (int(dist[z]) + 1) >= rv]
    near = [z for z in heavy if dist[z] <= 1]
    if any(dist[z] == 0 for z in near) or len(near) > 1:
        return v, rv, (dist, ev)
    if near:
        z = near[0]
        rz = radius_at(g, pi, z).value
        return (z, rz, (dist, ev)) if rz < rv else (v, rv, (dist, ev))
    gates = _ball_gate_map(g, v)
    K = set(g.adjacency[v])
    for x in sorted({gates.best[z] for z in heavy}):
        K &= g.adjsets[x]
        if not K:
            return v, rv, (dist, ev)
    u = min(K)
    ru = radius_at(g, pi, u).value
    if not ru < rv:
        raise InvariantViolation(f"neighbor {u} of {v} was expected to improve")
    return u, ru, (dist, ev)


def minimize_ball1_bh(g: Graph, pi: Profile, v: int) -> int:
    """An improving neighbor of v, or v when v is a local minimum.

    Only support vertices z with ``pi(z) (d(v, z) + 1) >= r(v)`` constrain
    the move: an improving neighbor must lie on a geodesic toward each of
    them, which the gates in ``N_2(v)`` decide in one intersection.
    """
    return _minimize_ball1_bh(g, pi, v)[0]


def _level_sets(g: Graph, members: list[int], k: int) -> dict[int, int]:
    """Radius values up to k for the 0-1 profile on ``members``, all of
    which lie on the same side of the bipartition.

    Level i partitions the members into blocks whose i-balls meet on the
    parity class of i; the block intersections are disjoint. Level i + 1
    merges blocks greedily around the vertex lying in the most neighbor
    sets of current intersections.
    """
    adj = g.adjacency
    blocks: list[set[int]] = [{x} for x in members]
    found: dict[int, int] = {}
    if len(blocks) == 1:
        found.update({y: 0 for y in blocks[0]})
    for level in range(1, k + 1):
        zs = [set() for _ in blocks]
        for j, Y in enumerate(blocks):
            zj = zs[j]
            for y in Y:
                zj.update(adj[y])
        if len(blocks) == 1:
            blocks = zs
        else:
            occ: dict[int, list[int]] = {}
            for j, zj in enumerate(zs):
                for z in zj:
                    occ.setdefault(z, []).append(j)
            prio = {z: len(js) for z, js in occ.items()}
            heap = [(-p, z) for z, p in prio.items()]
            heapq.heapify(heap)
            alive = [True] * len(zs)
            merged: list[set[int]] = []
            while heap:
                p, z = heapq.heappop(heap)
                if prio[z] != -p or p == 0:
                    continue
                group = [j for j in occ[z] if alive[j]]
                inter = set.intersection(*(zs[j] for j in group))
                for j in group:
                    alive[j] = False
                    for y in zs[j]:
                        prio[y] -= 1
                        if prio[y] > 0:
                            heapq.heappush(heap, (-prio[y], y))
                merged.append(inter)
            blocks = merged
        if len(blocks) == 1:
            for y in blocks[0]:
                found.setdefault(y, level)
    return found


def k_ball_radius_01(g: Graph, pi: Profile, k: int) -> dict[int, int]:
    """All vertices with radius value at most k for a 0-1 profile, with
    their values.

    Each side of the bipartition is handled separately and the two values
    are combined by maximum.
    """
    if not pi.is_01:
        raise InputError("k_ball_radius_01 needs a 0-1 profile")
    pi.validate(g)
    side = bipartition(g)
    out: dict[int, int] | None = None
    for s in (0, 1):
        members = [z for z in pi.support if side[z] == s]
        if not members:
            continue
        vals = _level_sets(g, members, k)
        out = vals if out is None else {v: max(out[v], r) for v, r in vals.items() if v in out}
    assert out is not None
    return dict(sorted(out.items()))


def interval_second_meet(g: Graph, v: int, X: Iterable[int]) -> set[int]:
    """Vertices at distance 2 from v lying on a geodesic from v to every
    vertex of X."""
    xs = sorted(set(X))
    if not xs:
        raise InputError("X is empty")
    dv = g.bfs(v)
    if any(dv[x] <= 1 for x in xs):
        return set()
    at2 = [x for x in xs if dv[x] == 2]
    if at2:
        if len(at2) > 1:
            return set()
        x = at2[0]
        dx = g.bfs(x)
        return {x} if all(dv[x] + dx[y] == dv[y] for y in xs) else set()
    at3 = [x for x in xs if dv[x] == 3]
    if at3:
        Y = {w for w in g.adjacency[at3[0]] if dv[w] == 2}
        for x in at3[1:]:
            Y &= g.adjsets[x]
        rest = [x for x in xs if dv[x] >= 4]
        if not rest or not Y:
            return Y
        return Y & interval_second_meet(g, v, rest)
    gates = _ball_gate_map(g, v)
    A = set(g.adjacency[v])
    for x in sorted({gates.best[x] for x in xs}):
        A &= g.adjsets[x]
    if not A:
        return set()
    a = min(A)
    da = g.bfs(a)
    r = max(int(da[x]) for x in xs)
    weights: dict[int, Weight] = {x: Fraction(r, int(da[x])) for x in xs}
    weights.update({y: Fraction(r, 3) for y in A})
    b = minimize_ball1_bh(g, Profile(weights), a)
    if b == a:
        return set()
    gates_b = best_preneighbor_map(g, (b, *g.adjacency[b]))
    targets = {gates_b.best[x] for x in xs}
    within = k_ball_radius_01(g, Profile.uniform(targets), 2)
    touch = set().union(*(g.adjsets[y] for y in A))
    return {u for u in within if dv[u] == 2 and u in touch}


def improve_eccentricity_bh(g: Graph, pi: Profile, v: int) -> int:
    """A vertex of ``B_2(v)`` with a strictly smaller value, or v when v is
    a center. Valid on bipartite Helly graphs."""
    u, ru, (dist, ev) = _minimize_ball1_bh(g, pi, v)
    rv = ev.value
    if u != v:
        return u
    furthest = ev.furthest
    if any(dist[z] <= 1 for z in furthest):
        return v
    cand = interval_second_meet(g, v, furthest)
    if not cand:
        return v
    fset = set(furthest)
    X = [x for x, w in pi.weights.items() if x not in fset and w * (int(dist[x]) + 2) >= rv]
    if any(dist[x] == 0 for x in X):
        return v
    for x in X:
        if dist[x] == 1:
            cand &= g.adjsets[x]
    far = [x for x in X if dist[x] >= 2]
    if far and cand:
        gates = _ball_gate_map(g, v)
        within = k_ball_radius_01(g, Profile.uniform({gates.best[x] for x in far}), 2)
        cand = {u for u in cand if u in within}
    if not cand:
        return v
    u = min(cand)
    if not radius_at(g, pi, u).value < rv:
        raise InvariantViolation(f"improvement {v} -> {u} failed certification")
    return u


BH_STEP = ImproveStep(improve_eccentricity_bh, 2, "bipartite-helly")

