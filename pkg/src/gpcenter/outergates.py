"""Best pre-neighbors and outergates of a vertex set.

For a set S and a vertex z outside S, a vertex z* with
``d(z, z*) = d(z, S) - 1`` that is adjacent to every vertex of the metric
projection ``proj_z(S)`` is an outergate of z. The map computed here picks,
among the vertices of ``N(S)`` at distance ``d(z, S) - 1`` from z, one with
the most neighbors in S. That choice is an outergate whenever z has one.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .graph import Graph


@dataclass
class OutergateMap:
    """Result of :func:`best_preneighbor_map`.

    Attributes:
        source: The set S.
        dist: Distance of every vertex to S.
        best: Chosen pre-neighbor of every vertex outside S (``-1`` on S);
            vertices of ``N(S)`` map to themselves.
        score: ``|N(y) & S|`` for vertices y of ``N(S)``, else 0.
    """

    source: frozenset[int]
    dist: np.ndarray
    best: list[int]
    score: list[int]
    _g: Graph = field(repr=False)
    _proj: dict[int, frozenset[int]] | None = field(default=None, repr=False)

    @property
    def gate(self) -> dict[int, int]:
        """Gates of the vertices at distance at least 2 from S."""
        return {z: self.best[z] for z in np.flatnonzero(self.dist >= 2).tolist()}

    def outergate(self, z: int) -> int:
        if z in self.source:
            raise InputError(f"vertex {z} lies in the source set")
        return self.best[z]

    def projection(self, z: int) -> frozenset[int]:
        """Vertices of S closest to z."""
        if self._proj is None:
            self._proj = _projections(self._g, self.source, self.dist)
        return self._proj[z]

    def is_true_outergate(self, z: int) -> bool:
        """Whether the chosen vertex is adjacent to all of ``proj_z(S)``."""
        return self.score[self.best[z]] == len(self.projection(z))


def _projections(g: Graph, source: frozenset[int], dist: np.ndarray) -> dict[int, frozenset[int]]:
    proj: dict[int, frozenset[int]] = {}
    for z in np.argsort(dist, kind="stable").tolist():
        d = dist[z]
        if d == 0:
            proj[z] = frozenset((z,))
        elif d == 1:
            proj[z] = frozenset(w for w in g.adjacency[z] if w in source)
        else:
            acc: set[int] = set()
            for p in g.adjacency[z]:
                if dist[p] == d - 1:
                    acc |= proj[p]
            proj[z] = frozenset(acc)
    return proj


def best_preneighbor_map(g: Graph, source: Iterable[int]) -> OutergateMap:
    """Map every vertex outside S to a best pre-neighbor in ``N(S)``.

    One BFS from S followed by a single sweep in BFS order: the candidates
    of z are exactly the candidates of its neighbors one layer closer to S,
    so the best one propagates outward. Ties go to the smallest index.
    """
    src = frozenset(int(s) for s in source)
    if not src:
        raise InputError("source set is empty")
    dist, _ = g.bfs_multi(sorted(src))
    n = g.n
    best = [-1] * n
    score = [0] * n
    adj = g.adjacency
    distl = dist.tolist()
    for z in np.argsort(dist, kind="stable").tolist():
        d = distl[z]
        if d == 0:
            continue
        if d == 1:
            best[z] = z
            score[z] = sum(1 for w in adj[z] if w in src)
            continue
        pick = -1
        for p in adj[z]:
            if distl[p] == d - 1:
                c = best[p]
                if pick < 0 or score[c] > score[pick] or (score[c] == score[pick] and c < pick):
                    pick = c
        best[z] = pick
    return OutergateMap(src, dist, best, score, g)


def verify_interval_outergate(g: Graph, u: int, v: int) -> int | None:
    """Smallest w in ``I(u, v)`` with ``d(u, w) = d(u, v) - 2`` adjacent to
    every neighbor of v in ``I(u, v)``, or ``None`` if there is none."""
    du = g.bfs(u)
    dv = g.bfs(v)
    k = int(du[v])
    if k < 2:
        raise InputError(f"d({u}, {v}) = {k}; need at least 2")
    lower = [x for x in g.adjacency[v] if du[x] == k - 1]
    adjsets = g.adjsets
    for w in np.flatnonzero((du == k - 2) & (dv == 2)).tolist():
        if all(x in adjsets[w] for x in lower):
            return w
    return None
