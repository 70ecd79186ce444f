"""Improvement steps for weakly bridged (and bridged) graphs.

The step either finds a better vertex in ``B_1(v)`` by evaluating all
candidate neighbors of v at once through a clique, or moves two steps
toward the part of the furthest set not shadowed by the best class of
neighbors.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Collection, Iterable
from dataclasses import dataclass

import numpy as np

from .descent import ImproveStep
from .errors import InputError, InvariantViolation
from .graph import Graph, Profile, RadiusEvaluation, Weight, radius_at
from .outergates import OutergateMap, best_preneighbor_map
from .rmq import max_over_nonneighbors

CliqueEcc = Callable[[Graph, Profile, Collection[int]], dict[int, Weight]]


def check_clique(g: Graph, K: Collection[int]) -> list[int]:
    ks = sorted(set(K))
    if not ks:
        raise InputError("clique is empty")
    adj = g.adjsets
    for i, a in enumerate(ks):
        for b in ks[i + 1 :]:
            if b not in adj[a]:
                raise InputError(f"vertices {a} and {b} of the clique are not adjacent")
    return ks


def clique_eccentricity_formula(
    g: Graph,
    pi: Profile,
    K: Collection[int],
    gates: OutergateMap,
    without_gate: Iterable[int] = (),
) -> dict[int, Weight]:
    """Radius function on every vertex of a clique K from one pass.

    ``gates`` maps each vertex outside K to a vertex of ``N(K)``; for the
    vertices not listed in ``without_gate`` that vertex must be an
    outergate, so a support vertex y behind gate u is at distance
    ``d(y, K)`` from the clique vertices adjacent to u and one more from
    the others. Vertices without outergate are at distance ``d(y, K)`` from
    all of K.
    """
    ks = check_clique(g, K)
    kset = set(ks)
    skip = set(without_gate)
    dist = gates.dist
    alpha: dict[int, Weight] = defaultdict(int)
    beta: dict[int, Weight] = defaultdict(int)
    flat: Weight = 0
    top: list[tuple[Weight, int]] = []
    for y, w in pi.weights.items():
        if y in kset:
            top.append((w, y))
            continue
        dy = int(dist[y])
        if y in skip:
            flat = max(flat, w * dy)
            continue
        u = gates.best[y]
        alpha[u] = max(alpha[u], w * dy)
        beta[u] = max(beta[u], w * (dy + 1))
    top.sort(key=lambda t: (-t[0], t[1]))

    verts, local = g.induced(ks + [u for u in np.flatnonzero(dist == 1).tolist()])
    kappa = [beta.get(x, 0) if x not in kset else 0 for x in verts]
    far, _ = max_over_nonneighbors(local, kappa)
    pos = {x: i for i, x in enumerate(verts)}

    out: dict[int, Weight] = {}
    for w in ks:
        val = flat
        for tw, ty in top[:2]:
            if ty != w:
                val = max(val, tw)
                break
        for u in g.adjacency[w]:
            a = alpha.get(u)
            if a is not None and a > val:
                val = a
        val = max(val, far[pos[w]])
        out[w] = val
    return out


def clique_eccentricities_wb(g: Graph, pi: Profile, K: Collection[int]) -> dict[int, Weight]:
    """Radius function on a clique of a weakly bridged graph, where every
    vertex has an outergate with respect to every clique."""
    return clique_eccentricity_formula(g, pi, K, best_preneighbor_map(g, K))


@dataclass
class _Local:
    """Quantities around v shared by the steps of one improvement."""

    dist: np.ndarray
    ev: RadiusEvaluation
    gates: OutergateMap | None = None

    @property
    def value(self) -> Weight:
        return self.ev.value


def _local(g: Graph, pi: Profile, v: int) -> _Local:
    dist = g.bfs(v)
    return _Local(dist, radius_at(g, pi, v, dist))


def _ball_gates(g: Graph, v: int, loc: _Local) -> OutergateMap:
    if loc.gates is None:
        loc.gates = best_preneighbor_map(g, (v, *g.adjacency[v]))
    return loc.gates


def _minimize_ball1(
    g: Graph, pi: Profile, v: int, clique_ecc: CliqueEcc, loc: _Local | None = None
) -> tuple[int, Weight]:
    loc = _local(g, pi, v) if loc is None else loc
    rv = loc.value
    furthest = loc.ev.furthest
    if rv == 0:
        return v, rv
    near = [z for z in furthest if loc.dist[z] == 1]
    if len(near) > 1:
        return v, rv
    if near:
        z = near[0]
        rz = radius_at(g, pi, z).value
        return (z, rz) if rz < rv else (v, rv)
    gates = _ball_gates(g, v, loc)
    K = set(g.adjacency[v])
    for x in sorted({gates.best[z] for z in furthest}):
        K &= g.adjsets[x]
        if not K:
            return v, rv
    ecc = clique_ecc(g, pi, K)
    u = min(ecc, key=lambda w: (ecc[w], w))
    return (u, ecc[u]) if ecc[u] < rv else (v, rv)


def minimize_ball1_wb(g: Graph, pi: Profile, v: int) -> int:
    """Minimizer of the radius function over ``B_1(v)``; v itself when v is
    a local minimum, otherwise the smallest best neighbor."""
    return _minimize_ball1(g, pi, v, clique_eccentricities_wb)[0]


@dataclass(frozen=True)
class ShadowPartition:
    """Neighbors of v grouped by which gates of the furthest set they see.

    Attributes:
        classes: Classes sorted by smallest member.
        shadow_sizes: Number of furthest vertices shadowed by each class.
        gates: Gate in ``N_2(v)`` of every furthest vertex.
    """

    classes: list[tuple[int, ...]]
    shadow_sizes: list[int]
    gates: dict[int, int]

    def shadow(self, g: Graph, w: int) -> frozenset[int]:
        return frozenset(z for z, x in self.gates.items() if x in g.adjsets[w])


def _shadow_partition(g: Graph, v: int, furthest: Iterable[int], gates: OutergateMap) -> ShadowPartition:
    gate_of = {z: gates.best[z] for z in furthest}
    count: dict[int, int] = defaultdict(int)
    for x in gate_of.values():
        count[x] += 1
    nv = g.adjacency[v]
    nvset = g.adjsets[v]
    cls_of = {w: 0 for w in nv}
    members: dict[int, set[int]] = {0: set(nv)}
    fresh = 1
    for x in sorted(count):
        touched: dict[int, list[int]] = defaultdict(list)
        for w in g.adjacency[x]:
            if w in nvset:
                touched[cls_of[w]].append(w)
        for cid, ms in touched.items():
            if len(ms) == len(members[cid]):
                continue
            members[fresh] = set(ms)
            members[cid] -= members[fresh]
            for w in ms:
                cls_of[w] = fresh
            fresh += 1
    classes = sorted((tuple(sorted(s)) for s in members.values() if s), key=lambda c: c[0])
    sizes = [sum(count.get(x, 0) for x in g.adjacency[c[0]]) for c in classes]
    return ShadowPartition(classes, sizes, gate_of)


def shadow_partition(g: Graph, pi: Profile, v: int) -> ShadowPartition:
    """Partition of ``N(v)`` by shadows of the furthest set, built by
    refining on the gates in ascending order."""
    loc = _local(g, pi, v)
    far = [z for z in loc.ev.furthest if loc.dist[z] >= 2]
    return _shadow_partition(g, v, far, _ball_gates(g, v, loc))


def _improve_ball2(g: Graph, pi: Profile, v: int, clique_ecc: CliqueEcc) -> int:
    loc = _local(g, pi, v)
    rv = loc.value
    u, ru = _minimize_ball1(g, pi, v, clique_ecc, loc)
    if ru < rv:
        return _certify(g, pi, v, u, rv, loc)
    furthest = loc.ev.furthest
    if any(loc.dist[z] <= 1 for z in furthest):
        # a local minimum with a furthest vertex in B_1(v) is a center
        return v
    part = _shadow_partition(g, v, furthest, _ball_gates(g, v, loc))
    best = max(range(len(part.classes)), key=lambda i: (part.shadow_sizes[i], -part.classes[i][0]))
    if part.shadow_sizes[best] == len(furthest):
        # only possible when v is already a center
        return v
    w0 = part.classes[best]
    covered = part.shadow(g, w0[0])
    z = min(z for z in furthest if z not in covered)
    cands = sorted(g.adjsets[v] & g.adjsets[part.gates[z]])
    w0set = set(w0)
    wmax = max(cands, key=lambda w: (sum(1 for x in g.adjacency[w] if x in w0set), -w))
    vplus, rplus = _minimize_ball1(g, pi, wmax, clique_ecc)
    if rplus < rv:
        return _certify(g, pi, v, vplus, rv, loc)
    return v


def _certify(g: Graph, pi: Profile, v: int, u: int, rv: Weight, loc: _Local) -> int:
    if loc.dist[u] > 2 or not radius_at(g, pi, u).value < rv:
        raise InvariantViolation(f"improvement {v} -> {u} failed certification")
    return u


def improve_eccentricity_wb(g: Graph, pi: Profile, v: int) -> int:
    """A vertex of ``B_2(v)`` with a strictly smaller value, or v when v is
    a center. Valid on weakly bridged graphs."""
    return _improve_ball2(g, pi, v, clique_eccentricities_wb)


WB_STEP = ImproveStep(improve_eccentricity_wb, 2, "weakly-bridged")
