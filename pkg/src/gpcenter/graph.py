"""Core graph, profile and distance primitives.

Graphs are simple, undirected and connected, with vertices ``0..n-1``.
Adjacency is kept both as sorted tuples (for Python-level scans) and as
CSR arrays (for the compiled BFS kernels).
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Union

import numpy as np

from . import _kernels
from .errors import InputError, SizeLimitError

Weight = Union[int, float, Fraction]

BRUTEFORCE_CAP = 5000


class Graph:
    """Immutable simple connected undirected graph.

    Args:
        n: Number of vertices.
        edges: Iterable of vertex pairs.
        check_connected: Reject disconnected input when true.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], *, check_connected: bool = True):
        if n < 1:
            raise InputError("graph needs at least one vertex")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise InputError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        degrees = np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=n)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=self.indptr[1:])
        self.indices = np.fromiter(
            (w for a in self.adjacency for w in a), dtype=np.int64, count=2 * m
        )
        if check_connected and n > 1 and (self.bfs(0) < 0).any():
            raise InputError("graph is disconnected")

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> Graph:
        edges = [(u, v) for u, nb in enumerate(adjacency) for v in nb if u < v]
        return cls(len(adjacency), edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def adjsets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjsets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def bfs(self, source: int, limit: int | None = None) -> np.ndarray:
        """Distances from ``source``; ``-1`` marks vertices beyond ``limit``."""
        self._check_vertex(source)
        return _kernels.bfs(self.indptr, self.indices, source, -1 if limit is None else limit)

    def bfs_multi(self, sources: Iterable[int], limit: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Distances to a vertex set and the source each vertex was reached from."""
        src = np.fromiter(sources, dtype=np.int64)
        return _kernels.bfs_multi(self.indptr, self.indices, src, -1 if limit is None else limit)

    def ball(self, v: int, r: int) -> list[int]:
        d = self.bfs(v, r)
        return np.flatnonzero(d >= 0).tolist()

    def induced(self, vertices: Iterable[int]) -> tuple[list[int], list[list[int]]]:
        """Local adjacency lists of an induced subgraph (not required connected)."""
        verts = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(verts)}
        adj = [[pos[w] for w in self.adjacency[v] if w in pos] for v in verts]
        return verts, adj

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range for n={self.n}")


def distances(g: Graph, source: int, limit: int | None = None) -> np.ndarray:
    return g.bfs(source, limit)


def in_interval(g: Graph, u: int, v: int, w: int) -> bool:
    du = g.bfs(u)
    dw = g.bfs(w)
    return bool(du[w] + dw[v] == du[v])


def interval(g: Graph, u: int, v: int, du: np.ndarray | None = None, dv: np.ndarray | None = None) -> list[int]:
    du = g.bfs(u) if du is None else du
    dv = g.bfs(v) if dv is None else dv
    return np.flatnonzero(du + dv == du[v]).tolist()


@dataclass(frozen=True)
class Profile:
    """Nonnegative vertex weights; only the positive ones are stored.

    Weights may be ints, floats or Fractions. Any Fraction makes the
    profile exact and all radius arithmetic is then done with rationals.
    """

    weights: Mapping[int, Weight]
    support: tuple[int, ...] = field(init=False, repr=False)
    exact: bool = field(init=False, repr=False)

    def __post_init__(self) -> None:
        clean: dict[int, Weight] = {}
        for v, w in self.weights.items():
            if isinstance(w, float) and not math.isfinite(w):
                raise InputError(f"weight of vertex {v} is not finite")
            if w < 0:
                raise InputError(f"negative weight at vertex {v}")
            if w > 0:
                clean[int(v)] = w
        object.__setattr__(self, "weights", dict(sorted(clean.items())))
        object.__setattr__(self, "support", tuple(sorted(clean)))
        object.__setattr__(self, "exact", any(isinstance(w, Fraction) for w in clean.values()))

    @classmethod
    def uniform(cls, vertices: Iterable[int], weight: Weight = 1) -> Profile:
        return cls({v: weight for v in vertices})

    def __getitem__(self, v: int) -> Weight:
        return self.weights.get(v, 0)

    def __len__(self) -> int:
        return len(self.support)

    @property
    def is_01(self) -> bool:
        return all(w == 1 for w in self.weights.values())

    @cached_property
    def support_array(self) -> np.ndarray:
        return np.array(self.support, dtype=np.int64)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.array([float(self.weights[v]) for v in self.support], dtype=np.float64)

    def validate(self, g: Graph) -> None:
        if not self.support:
            raise InputError("profile has empty support")
        if self.support[-1] >= g.n:
            raise InputError(f"profile vertex {self.support[-1]} out of range for n={g.n}")


@dataclass(frozen=True)
class RadiusEvaluation:
    vertex: int
    value: Weight
    furthest: tuple[int, ...]


@dataclass(frozen=True)
class CenterResult:
    radius: Weight
    centers: tuple[int, ...]

    @property
    def vertex(self) -> int:
        return self.centers[0]


def weighted_max(pi: Profile, dist: np.ndarray) -> tuple[Weight, tuple[int, ...]]:
    """Value of ``max pi(z) * dist[z]`` and the support vertices attaining it."""
    if pi.exact:
        vals = [(pi.weights[z] * int(dist[z]), z) for z in pi.support]
        best = max(v for v, _ in vals)
        return best, tuple(z for v, z in vals if v == best)
    vals = pi.weight_array * dist[pi.support_array]
    best = vals.max()
    return float(best), tuple(pi.support_array[vals == best].tolist())


def radius_at(g: Graph, pi: Profile, v: int, dist: np.ndarray | None = None) -> RadiusEvaluation:
    """Evaluate the radius function at ``v`` with one BFS."""
    dist = g.bfs(v) if dist is None else dist
    value, furthest = weighted_max(pi, dist)
    return RadiusEvaluation(v, value, furthest)


def radius_value(g: Graph, pi: Profile, v: int) -> Weight:
    return radius_at(g, pi, v).value


def eccentricities(g: Graph, pi: Profile, vertices: Sequence[int] | None = None) -> dict[int, Weight]:
    """Radius function values on ``vertices`` (all vertices by default).

    Runs one BFS per queried vertex or one per support vertex, whichever
    is fewer.
    """
    verts = list(range(g.n)) if vertices is None else list(vertices)
    if not verts:
        return {}
    if pi.exact:
        if len(verts) <= len(pi.support):
            return {v: weighted_max(pi, g.bfs(v))[0] for v in verts}
        out: dict[int, Weight] = {v: 0 for v in verts}
        for z in pi.support:
            d = g.bfs(z)
            w = pi.weights[z]
            for v in verts:
                val = w * int(d[v])
                if val > out[v]:
                    out[v] = val
        return out
    if len(verts) <= len(pi.support):
        vals = _kernels.ecc_at(
            g.indptr, g.indices, np.array(verts, dtype=np.int64), pi.support_array, pi.weight_array
        )
        return dict(zip(verts, vals.tolist()))
    allvals = eccentricity_array(g, pi)
    return {v: float(allvals[v]) for v in verts}


def eccentricity_array(g: Graph, pi: Profile) -> np.ndarray:
    """Float radius function values of every vertex (inexact profiles only)."""
    if pi.exact:
        ecc = eccentricities(g, pi)
        return np.array([float(ecc[v]) for v in range(g.n)])
    return _kernels.ecc_from_support(g.indptr, g.indices, pi.support_array, pi.weight_array)


def center_bruteforce_small(
    g: Graph,
    pi: Profile,
    cap: int | None = BRUTEFORCE_CAP,
    *,
    distance_matrix: np.ndarray | None = None,
) -> CenterResult:
    """Exact center by evaluating the radius function everywhere.

    Args:
        g: Input graph.
        pi: Profile with nonempty support.
        cap: Largest admissible ``n``; ``None`` disables the check.
        distance_matrix: Optional all-pairs matrix to read distances from
            instead of running BFS.

    Returns:
        The minimum value and all vertices attaining it.
    """
    if cap is not None and g.n > cap:
        raise SizeLimitError(f"n={g.n} exceeds brute-force cap {cap}")
    pi.validate(g)
    if distance_matrix is not None:
        rows = distance_matrix[pi.support_array]
        if pi.exact:
            vals = [max(pi.weights[z] * int(rows[i, v]) for i, z in enumerate(pi.support)) for v in range(g.n)]
        else:
            vals = (pi.weight_array[:, None] * rows).max(axis=0).tolist()
    elif pi.exact:
        ecc = eccentricities(g, pi)
        vals = [ecc[v] for v in range(g.n)]
    else:
        vals = eccentricity_array(g, pi).tolist()
    best = min(vals)
    return CenterResult(best, tuple(v for v, x in enumerate(vals) if x == best))


def ceil_sqrt(n: int) -> int:
    return math.isqrt(n - 1) + 1 if n > 0 else 0
