"""Deterministic and seeded graph constructions.

Grid-like families number vertices row-major starting at the upper-left
corner.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InputError
from .graph import Graph, Profile


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel(k: int) -> Graph:
    """Cycle ``0..k-1`` plus a hub ``k`` adjacent to all of it."""
    return Graph(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)])


def random_tree(n: int, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return Graph(n, [(i, int(rng.integers(0, i))) for i in range(1, n)])


def square_grid(rows: int, cols: int) -> Graph:
    """Grid with ``rows x cols`` vertices; vertex ``(r, c)`` is ``r * cols + c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def king_grid(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            for dr, dc in ((0, 1), (1, -1), (1, 0), (1, 1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    edges.append((v, rr * cols + cc))
    return Graph(rows * cols, edges)


def triangular_grid(side: int, other: int | None = None) -> Graph:
    """Lozenge of the triangular lattice with the given side lengths
    (counted in edges): a square grid with one parallel diagonal per cell."""
    other = side if other is None else other
    rows, cols = side + 1, other + 1
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
                if c + 1 < cols:
                    edges.append((v, v + cols + 1))
    return Graph(rows * cols, edges)


def triangular_hexagon(k: int) -> Graph:
    """Hexagonal region of the triangular lattice with side ``k`` edges."""
    cells = [(a, b) for a in range(-k, k + 1) for b in range(-k, k + 1) if abs(a + b) <= k]
    index = {c: i for i, c in enumerate(cells)}
    edges = []
    for (a, b), i in index.items():
        for da, db in ((1, 0), (0, 1), (-1, 1)):
            j = index.get((a + da, b + db))
            if j is not None:
                edges.append((i, j))
    return Graph(len(cells), edges)


def hypercube(r: int) -> Graph:
    n = 1 << r
    return Graph(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(r) if v < v ^ (1 << i)])


def b_n(n: int) -> Graph:
    """``K_{n,n}`` minus a perfect matching: ``a_i = i``, ``b_j = n + j``."""
    return Graph(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def b_hat_n(n: int) -> Graph:
    """``B_n`` plus adjacent vertices ``a = 2n`` (joined to every ``b_j``)
    and ``b = 2n + 1`` (joined to every ``a_i``)."""
    a, b = 2 * n, 2 * n + 1
    edges = [(i, n + j) for i in range(n) for j in range(n) if i != j]
    edges += [(a, b)] + [(a, n + j) for j in range(n)] + [(b, i) for i in range(n)]
    return Graph(2 * n + 2, edges)


def simplex_graph(h: Graph) -> Graph:
    """Simplex graph of a triangle-free graph: the empty set, the vertices
    and the edges of ``h``, ordered by inclusion. Vertex 0 is the empty set,
    ``1..n`` the vertices, then one vertex per edge."""
    adj = h.adjsets
    for x, y in h.edges():
        if adj[x] & adj[y]:
            raise InputError("simplex graph construction needs a triangle-free graph")
    edges = [(0, v + 1) for v in range(h.n)]
    for i, (x, y) in enumerate(h.edges()):
        e = h.n + 1 + i
        edges += [(x + 1, e), (y + 1, e)]
    return Graph(h.n + 1 + h.m, edges)


@dataclass(frozen=True)
class GridPlusPath:
    """Grid with a long path attached, with its distinguished vertices."""

    graph: Graph
    profile: Profile
    k: int
    labels: dict[str, int]


def grid_plus_path(k: int) -> GridPlusPath:
    """A grid of width ``k`` and height ``2k + 2`` (in edges) with a path of
    ``k(k + 1)`` edges glued at the lower-left corner c.

    The profile puts weight 1 on the far end l of the path and weight
    ``k + 1`` on the lower-right corner r. Labels: v and u are the upper
    corners, z and z2 the horizontal and vertical neighbors of v, t the
    vertex below u.
    """
    if k < 1:
        raise InputError("k must be positive")
    cols, rows = k + 1, 2 * k + 3
    grid = square_grid(rows, cols)
    c = (rows - 1) * cols
    plen = k * (k + 1)
    first = rows * cols
    edges = grid.edges() + [(c, first)] + [(first + i, first + i + 1) for i in range(plen - 1)]
    g = Graph(first + plen, edges)
    labels = {
        "v": 0,
        "z": 1,
        "z2": cols,
        "u": k,
        "t": k + cols,
        "c": c,
        "r": c + k,
        "l": first + plen - 1,
    }
    return GridPlusPath(g, Profile({labels["l"]: 1, labels["r"]: k + 1}), k, labels)


@dataclass(frozen=True)
class HittingSetGadget:
    graph: Graph
    v: int
    profile: Profile
    X: tuple[frozenset[int], ...]
    Y: tuple[frozenset[int], ...]
    universe: int


def hse_gadget(X: Sequence[Iterable[int]], Y: Sequence[Iterable[int]], universe: int) -> HittingSetGadget:
    """Graph encoding whether some set of X meets every set of Y.

    Vertex layout: the elements ``0..|U|-1`` (a clique), then the sets of X,
    the sets of Y, and finally a, b, c, v, w. Each set is adjacent to its
    elements; a and b are adjacent to all of X and U; v to a, w and all of
    X; b to c. With the unit profile, v has value 3 and is a local minimum
    in G and in its square exactly when no set of X meets all of Y.
    """
    xs = tuple(frozenset(s) for s in X)
    ys = tuple(frozenset(s) for s in Y)
    elems = set(range(universe))
    for fam, name in ((xs, "X"), (ys, "Y")):
        if not fam or any(not s for s in fam):
            raise InputError(f"{name} must be a nonempty family of nonempty sets")
        if any(not s <= elems for s in fam):
            raise InputError(f"{name} has elements outside the universe")
        if set().union(*fam) != elems:
            raise InputError(f"{name} does not cover the universe")
    nu, nx, ny = universe, len(xs), len(ys)
    x0, y0 = nu, nu + nx
    a, b, c, v, w = (y0 + ny + i for i in range(5))
    edges = list(combinations(range(nu), 2))
    for i, s in enumerate(xs):
        edges += [(x0 + i, e) for e in s] + [(a, x0 + i), (b, x0 + i), (v, x0 + i)]
    for i, s in enumerate(ys):
        edges += [(y0 + i, e) for e in s]
    edges += [(a, e) for e in range(nu)] + [(b, e) for e in range(nu)]
    edges += [(a, v), (v, w), (b, c)]
    g = Graph(w + 1, edges)
    return HittingSetGadget(g, v, Profile.uniform(range(g.n)), xs, ys, universe)


def has_hitting_set(X: Sequence[frozenset[int]], Y: Sequence[frozenset[int]]) -> bool:
    return any(all(x & y for y in Y) for x in X)


def pentagon_tail(n: int, seed: int) -> Graph:
    """A 5-cycle with random trees hanging from its vertices."""
    if n < 5:
        raise InputError("pentagon_tail needs n >= 5")
    rng = np.random.default_rng(seed)
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, int(rng.integers(0, i))) for i in range(5, n)]
    return Graph(n, edges)


def one_sum(parts: Sequence[Graph], seed: int) -> Graph:
    """Glue graphs along single vertices into a tree-like chain of blocks.

    Each new part is attached by identifying one of its vertices with a
    random vertex of what has been built so far.
    """
    rng = np.random.default_rng(seed)
    edges = list(parts[0].edges())
    n = parts[0].n
    for h in parts[1:]:
        host = int(rng.integers(0, n))
        joint = int(rng.integers(0, h.n))
        relabel = {}
        nxt = n
        for x in range(h.n):
            if x == joint:
                relabel[x] = host
            else:
                relabel[x] = nxt
                nxt += 1
        edges += [(relabel[x], relabel[y]) for x, y in h.edges()]
        n = nxt
    return Graph(n, edges)


def random_chordal(n: int, seed: int, max_clique: int = 4) -> Graph:
    """Chordal graph grown by adding vertices adjacent to a clique."""
    rng = np.random.default_rng(seed)
    adj: list[set[int]] = [set()]
    cliques: list[tuple[int, ...]] = [(0,)]
    edges = []
    for v in range(1, n):
        base = cliques[int(rng.integers(0, len(cliques)))]
        size = int(rng.integers(1, min(len(base), max_clique - 1) + 1))
        chosen = tuple(sorted(rng.choice(base, size=size, replace=False).tolist()))
        edges += [(v, x) for x in chosen]
        adj.append(set(chosen))
        for x in chosen:
            adj[x].add(v)
        cliques.append(chosen + (v,))
    return Graph(n, edges)


def staircase_polyomino(width: int, seed: int) -> Graph:
    """Grid graph of a random orthogonally convex polyomino: consecutive
    columns are overlapping vertical runs of cells."""
    rng = np.random.default_rng(seed)
    runs = []
    lo, hi = 0, int(rng.integers(1, width + 1))
    for _ in range(width):
        runs.append((lo, hi))
        nlo = int(rng.integers(lo, hi + 1))
        nhi = int(rng.integers(max(nlo, hi), hi + 3))
        if nhi - nlo < 1:
            nhi = nlo + 1
        lo, hi = nlo, nhi
    cells = {(c, r) for c, (a, b) in enumerate(runs) for r in range(a, b + 1)}
    # convexify rows
    byrow: dict[int, list[int]] = {}
    for c, r in cells:
        byrow.setdefault(r, []).append(c)
    for r, cs in byrow.items():
        cells |= {(c, r) for c in range(min(cs), max(cs) + 1)}
    index = {cell: i for i, cell in enumerate(sorted(cells))}
    edges = []
    for (c, r), i in index.items():
        for dc, dr in ((1, 0), (0, 1)):
            j = index.get((c + dc, r + dr))
            if j is not None:
                edges.append((i, j))
    return Graph(len(index), edges)


def random_profile(g: Graph, seed: int, *, zero_one: bool = False, low: int = 1, high: int = 10) -> Profile:
    """Integer weights uniform in ``[low, high]`` (or all 1) on a random
    support of size between 2 and ``n / 2``."""
    rng = np.random.default_rng(seed)
    top = max(2, g.n // 2)
    size = min(g.n, int(rng.integers(2, top + 1))) if g.n > 1 else 1
    support = rng.choice(g.n, size=size, replace=False)
    if zero_one:
        return Profile({int(v): 1 for v in support})
    weights = rng.integers(low, high + 1, size=size)
    return Profile({int(v): int(w) for v, w in zip(support, weights)})
