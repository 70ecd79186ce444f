"""Centers of radius functions on cube-free median graphs.

The solver keeps a convex region R known to contain a center. Each round
takes a median vertex of R, looks at the radius function on its star
(the vertex, its neighbors and the squares through it), and either
certifies a center or cuts R down to a halfspace of at most half its size.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InvariantViolation
from .graph import Graph, Profile, Weight
from .rmq import max_over_nonneighbors


@dataclass(frozen=True)
class ThetaClass:
    """One Djoković–Winkler class: its representative edge ``(a, b)`` with
    ``a < b`` and the halfspace of vertices closer to a."""

    edge: tuple[int, int]
    side: np.ndarray
    edges: tuple[tuple[int, int], ...]


@dataclass
class ThetaClasses:
    classes: list[ThetaClass]
    edge_class: dict[tuple[int, int], int]
    sides: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def halfspace(self, x: int, y: int) -> np.ndarray:
        """Vertices closer to x than to y, for an edge xy."""
        cls = self.classes[self.edge_class[(min(x, y), max(x, y))]]
        return cls.side if cls.side[x] else ~cls.side


def theta_classes(g: Graph, *, validate: bool = False) -> ThetaClasses:
    """Partition the edges into Θ-classes.

    Edges are scanned in sorted order; the first unassigned edge ab seeds a
    class made of all edges crossing from ``H(a, b)`` to ``H(b, a)``. An
    edge claimed twice, or a vertex equidistant from a and b, means the
    graph is not a partial cube. ``validate=True`` also compares every
    edge's own halfspaces with those of its class.
    """
    src = np.repeat(np.arange(g.n), np.diff(g.indptr))
    dst = g.indices
    edge_class: dict[tuple[int, int], int] = {}
    classes: list[ThetaClass] = []
    for a, b in g.edges():
        if (a, b) in edge_class:
            continue
        da, db = g.bfs(a), g.bfs(b)
        if (da == db).any():
            raise InvariantViolation(f"vertex equidistant from the ends of edge ({a}, {b})")
        side = da < db
        cross = side[src] & ~side[dst]
        members = []
        for x, y in zip(src[cross].tolist(), dst[cross].tolist()):
            key = (min(x, y), max(x, y))
            if key in edge_class:
                raise InvariantViolation(f"edge {key} falls into two Θ-classes")
            edge_class[key] = len(classes)
            members.append(key)
        classes.append(ThetaClass((a, b), side, tuple(sorted(members))))
    if validate:
        for (x, y), cid in edge_class.items():
            own = g.bfs(x) < g.bfs(y)
            ref = classes[cid].side
            if not ((own == ref).all() or (own == ~ref).all()):
                raise InvariantViolation(f"edge ({x}, {y}) disagrees with its Θ-class")
    sides = np.array([c.side for c in classes], dtype=bool) if classes else np.zeros((0, g.n), dtype=bool)
    return ThetaClasses(classes, edge_class, sides)


def median_vertex(g: Graph, theta: ThetaClasses, region: np.ndarray | None = None) -> int:
    """A vertex of the region minimizing the total distance to the region.

    Intersects the majority halfspace of every Θ-class cutting the region;
    on a tie the halfspace containing the smaller end of the class's
    representative edge is taken. Returns the smallest vertex left.
    """
    R = np.ones(g.n, dtype=bool) if region is None else region
    size = int(R.sum())
    if size == 0:
        raise InputError("region is empty")
    counts = theta.sides[:, R].sum(axis=1)
    mask = R.copy()
    for cid in np.flatnonzero((counts > 0) & (counts < size)).tolist():
        side = theta.sides[cid]
        mask &= side if 2 * counts[cid] >= size else ~side
    hits = np.flatnonzero(mask)
    if hits.size == 0:
        raise InvariantViolation("majority halfspaces do not meet")
    return int(hits[0])


@dataclass
class Star:
    """The star of v inside a region, with radius values on its vertices.

    Attributes:
        center: The vertex v.
        first: Neighbors of v in the region.
        second: Vertices of the region opposite v in a square.
        square_of: The two common neighbors of v and each second vertex.
        values: Radius function on the star.
        gate: Gate in the star of every vertex of the graph.
        dist: Distance of every vertex to the star.
    """

    center: int
    first: list[int]
    second: list[int]
    square_of: dict[int, tuple[int, int]]
    values: dict[int, Weight]
    gate: np.ndarray = field(repr=False)
    dist: np.ndarray = field(repr=False)

    @property
    def vertices(self) -> list[int]:
        return sorted([self.center, *self.first, *self.second])


def _top_two(items: list[tuple[Weight, int]]) -> list[tuple[Weight, int]]:
    return sorted(items, key=lambda t: (-t[0], t[1]))[:2]


def _best_except(top: list[tuple[Weight, int]], skip: int) -> Weight:
    for val, x in top:
        if x != skip:
            return val
    return 0


def star_and_eccentricities(g: Graph, pi: Profile, v: int, region: np.ndarray | None = None) -> Star:
    """Build the star of v in the region and evaluate the radius function
    on all of it from one BFS.

    The BFS from the star assigns every vertex to its gate. For
    ``i = 0..4`` the value ``k_i(z)`` is the largest ``pi(y) (d(y, z) + i)``
    over the fiber of z. The value at a star vertex is the maximum of
    ``k_j(z)`` over star vertices z at distance j from it; maxima over
    non-neighbors go through range-maximum queries, and the few second
    vertices whose far term stays ambiguous are resolved on an augmented
    copy of the star.
    """
    R = np.ones(g.n, dtype=bool) if region is None else region
    adj = g.adjacency
    first = [u for u in adj[v] if R[u]]
    common: dict[int, list[int]] = defaultdict(list)
    for u in first:
        for w in adj[u]:
            if w != v and R[w]:
                common[w].append(u)
    square_of: dict[int, tuple[int, int]] = {}
    for w, us in common.items():
        if len(us) > 2:
            raise InvariantViolation(f"vertices {v} and {w} have {len(us)} common neighbors")
        if len(us) == 2:
            square_of[w] = (us[0], us[1])
    second = sorted(square_of)
    verts = sorted([v, *first, *second])
    dist, gate = g.bfs_multi(verts)

    k = [defaultdict(int) for _ in range(5)]
    for y, wy in pi.weights.items():
        z = int(gate[y])
        dy = int(dist[y])
        for i in range(5):
            val = wy * (dy + i)
            if val > k[i][z]:
                k[i][z] = val

    pos = {x: i for i, x in enumerate(verts)}
    _, local = g.induced(verts)
    role = {v: 0, **{u: 1 for u in first}, **{w: 2 for w in second}}
    values: dict[int, Weight] = {}

    values[v] = max([k[0][v]] + [k[1][u] for u in first] + [k[2][w] for w in second])

    # first neighbors
    top_first_k2 = _top_two([(k[2][u], u) for u in first])
    kappa3_second = [k[3][x] if role[x] == 2 else 0 for x in verts]
    far3_first, _ = max_over_nonneighbors(local, kappa3_second)
    for u in first:
        val = max(k[1][v], k[0][u], _best_except(top_first_k2, u), far3_first[pos[u]])
        for w in adj[u]:
            if role.get(w) == 2:
                val = max(val, k[1][w])
        values[u] = val

    # second neighbors
    top_k2_at: dict[int, list[tuple[Weight, int]]] = {
        u: _top_two([(k[2][w], w) for w in adj[u] if role.get(w) == 2]) for u in first
    }
    kappa3_first = [k[3][x] if role[x] == 1 else 0 for x in verts]
    far3_second, _ = max_over_nonneighbors(local, kappa3_first)
    kappa4 = [k[4][x] if role[x] == 2 else 0 for x in verts]
    far4_val, far4_arg = max_over_nonneighbors(local, kappa4)
    far4: dict[int, Weight] = {}
    undecided: list[int] = []
    for w in second:
        u1, u2 = square_of[w]
        a1, a2 = far4_arg[pos[u1]], far4_arg[pos[u2]]
        w1, w2 = verts[a1], verts[a2]
        v1, v2 = far4_val[pos[u1]], far4_val[pos[u2]]
        if v1 == 0 or (role[w1] == 2 and not g.has_edge(w1, u2)):
            far4[w] = v1
        elif v2 == 0 or (role[w2] == 2 and not g.has_edge(w2, u1)):
            far4[w] = v2
        else:
            undecided.append(w)
    if undecided:
        per_first: dict[int, int] = defaultdict(int)
        aug = [set(nb) for nb in local]
        for w in undecided:
            pw = pos[w]
            for u in square_of[w]:
                per_first[u] += 1
                for x in local[pos[u]]:
                    if x != pw:
                        aug[pw].add(x)
                        aug[x].add(pw)
        if max(per_first.values()) > 2:
            raise InvariantViolation("a first neighbor has more than two undecided second neighbors")
        vals4, _ = max_over_nonneighbors([sorted(s) for s in aug], kappa4, closed=True)
        for w in undecided:
            far4[w] = vals4[pos[w]]
    for w in second:
        u1, u2 = square_of[w]
        val = max(
            k[2][v],
            k[0][w],
            k[1][u1],
            k[1][u2],
            _best_except(top_k2_at[u1], w),
            _best_except(top_k2_at[u2], w),
            far3_second[pos[w]],
            far4[w],
        )
        values[w] = val
    return Star(v, first, second, square_of, values, gate, dist)


@dataclass(frozen=True)
class NeighborAnalysis:
    """Improving neighbors of v inside its star.

    ``kind`` is ``"local-min"`` (none), ``"i"`` (improving neighbors) or
    ``"is"`` (only an improving vertex opposite v in a square).
    """

    kind: str
    i_neighbors: tuple[int, ...]
    is_neighbors: tuple[int, ...]


def improving_neighbor_analysis(g: Graph, pi: Profile, v: int, star: Star) -> NeighborAnalysis:
    rv = star.values[v]
    ins = tuple(u for u in star.first if star.values[u] < rv)
    iss = tuple(w for w in star.second if star.values[w] < rv)
    if len(ins) > 2:
        raise InvariantViolation(f"vertex {v} has {len(ins)} improving neighbors")
    if len(ins) == 2:
        a, b = ins
        if not any(set(sq) == {a, b} for sq in star.square_of.values()):
            raise InvariantViolation(f"improving neighbors {a}, {b} of {v} do not span a square")
    if ins:
        return NeighborAnalysis("i", ins, iss)
    if len(iss) > 1:
        raise InvariantViolation(f"vertex {v} has {len(iss)} improving square vertices")
    if iss:
        return NeighborAnalysis("is", ins, iss)
    return NeighborAnalysis("local-min", ins, iss)


@dataclass(frozen=True)
class FiberBoundary:
    """Vertices of the fiber of z that have a neighbor in another fiber,
    with the tree they induce."""

    z: int
    fiber: frozenset[int]
    vertices: tuple[int, ...]
    tree: dict[int, tuple[int, ...]]


def fiber_boundary(g: Graph, star: Star, z: int, region: np.ndarray | None = None) -> FiberBoundary:
    R = np.ones(g.n, dtype=bool) if region is None else region
    gate = star.gate
    fiber = frozenset(np.flatnonzero((gate == z) & R).tolist())
    bnd = sorted(x for x in fiber if any(R[y] and gate[y] != z for y in g.adjacency[x]))
    bset = set(bnd)
    tree = {x: tuple(y for y in g.adjacency[x] if y in bset) for x in bnd}
    nedges = sum(len(t) for t in tree.values()) // 2
    if nedges != len(bnd) - 1 or not _connected(tree, bnd):
        raise InvariantViolation(f"boundary of the fiber of {z} is not a tree")
    return FiberBoundary(z, fiber, tuple(bnd), tree)


def _connected(tree: dict[int, tuple[int, ...]], verts: list[int]) -> bool:
    if not verts:
        return False
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in tree[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def _centroid(tree: dict[int, tuple[int, ...]], alive: set[int]) -> int:
    root = min(alive)
    order, parent = [root], {root: -1}
    for x in order:
        for y in tree[x]:
            if y in alive and y not in parent:
                parent[y] = x
                order.append(y)
    size = dict.fromkeys(order, 1)
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]
    total = len(order)
    best, best_key = root, None
    for x in order:
        heavy = total - size[x]
        for y in tree[x]:
            if y in alive and parent.get(y) == x:
                heavy = max(heavy, size[y])
        if best_key is None or (heavy, x) < best_key:
            best, best_key = x, (heavy, x)
    return best


def _component(tree: dict[int, tuple[int, ...]], alive: set[int], start: int, cut: int) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in tree[x]:
            if y in alive and y != cut and y not in comp:
                comp.add(y)
                stack.append(y)
    return comp


def tree_local_min(tree: dict[int, tuple[int, ...]], values) -> int:
    """Local minimum of a function on a tree by centroid decomposition.

    ``values(x)`` must return a mapping with the value of x and of all its
    tree neighbors. Uses ``O(log |T|)`` calls.
    """
    alive = set(tree)
    while True:
        c = _centroid(tree, alive)
        vals = values(c)
        nbrs = [y for y in tree[c] if y in alive]
        better = [y for y in nbrs if vals[y] < vals[c]]
        if not better:
            return c
        nxt = min(better, key=lambda y: (vals[y], y))
        alive = _component(tree, alive, nxt, c)


def local_min_on_boundary_tree(
    g: Graph, pi: Profile, boundary: FiberBoundary, region: np.ndarray | None = None
) -> tuple[int, Star]:
    """A local minimum of the radius function on the boundary tree, with
    its star."""
    stars: dict[int, Star] = {}

    def values(x: int) -> dict[int, Weight]:
        stars[x] = star_and_eccentricities(g, pi, x, region)
        return stars[x].values

    u = tree_local_min(boundary.tree, values)
    return u, stars[u]


def _tree_path(tree: dict[int, tuple[int, ...]], a: int, b: int) -> list[int]:
    parent = {a: -1}
    order = [a]
    for x in order:
        for y in tree[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


@dataclass(frozen=True)
class ReduceResult:
    """Outcome of one round: either a certified center or a smaller region.

    ``case`` names the branch taken: ``"0"``/``"2"`` certify a center, the
    others cut to a halfspace.
    """

    median: int
    case: str
    center: int | None = None
    region: np.ndarray | None = None
    pivot: int | None = None


def reduce_convex_region(
    g: Graph,
    pi: Profile,
    theta: ThetaClasses,
    region: np.ndarray,
    forced_median: int | None = None,
) -> ReduceResult:
    """One round of the region-halving search."""
    R = region
    v = median_vertex(g, theta, R) if forced_median is None else forced_median
    if not R[v]:
        raise InputError(f"vertex {v} is outside the region")
    sv = star_and_eccentricities(g, pi, v, R)
    an = improving_neighbor_analysis(g, pi, v, sv)
    if an.kind == "local-min":
        return ReduceResult(v, "0", center=v)
    if an.kind == "is":
        w = an.is_neighbors[0]
        z = min(sv.square_of[w])
        return _cut(g, theta, R, z, v, v, "1", forced_median is None)
    z = min(an.i_neighbors, key=lambda x: (sv.values[x], x))
    fb = fiber_boundary(g, sv, z, R)
    u, su = local_min_on_boundary_tree(g, pi, fb, R)
    au = improving_neighbor_analysis(g, pi, u, su)
    if au.kind == "local-min":
        return ReduceResult(v, "2", center=u, pivot=u)
    if len(au.i_neighbors) == 1:
        return _cut(g, theta, R, au.i_neighbors[0], u, v, "4", forced_median is None, pivot=u)
    if au.kind == "is":
        w = au.is_neighbors[0]
        path = [v] + _tree_path(fb.tree, z, u)
        pred = path[-2]
        t = min(x for x in su.square_of[w] if x != pred)
        return _cut(g, theta, R, t, u, v, "3", forced_median is None, pivot=u)
    for t in au.i_neighbors:
        if sv.gate[t] != z:
            raise InvariantViolation(f"improving neighbor {t} of {u} left the fiber of {z}")
    return _cut(g, theta, R, z, v, v, "5", forced_median is None, pivot=u)


def _cut(
    g: Graph,
    theta: ThetaClasses,
    R: np.ndarray,
    a: int,
    b: int,
    v: int,
    case: str,
    halving: bool,
    pivot: int | None = None,
) -> ReduceResult:
    new = R & theta.halfspace(a, b)
    size = int(new.sum())
    if size == 0 or new[v]:
        raise InvariantViolation(f"case {case}: cut at edge ({a}, {b}) does not exclude the median")
    if halving and 2 * size > int(R.sum()):
        raise InvariantViolation(f"case {case}: cut keeps {size} of {int(R.sum())} vertices")
    return ReduceResult(v, case, region=new, pivot=pivot)


@dataclass(frozen=True)
class MedianRun:
    center: int
    rounds: int
    cases: tuple[str, ...]


def cut_on_best_neighbor(g: Graph, pi: Profile, theta: ThetaClasses | None = None) -> MedianRun:
    """Center of a radius function on a cube-free median graph.

    Each round at least halves the region, so there are at most
    ``ceil(log2 n) + 1`` rounds; more raises :class:`InvariantViolation`.
    """
    pi.validate(g)
    theta = theta_classes(g) if theta is None else theta
    R = np.ones(g.n, dtype=bool)
    bound = math.ceil(math.log2(g.n)) + 1 if g.n > 1 else 1
    cases: list[str] = []
    while True:
        if R.sum() == 1:
            center = int(np.flatnonzero(R)[0])
            break
        res = reduce_convex_region(g, pi, theta, R)
        cases.append(res.case)
        if len(cases) > bound:
            raise InvariantViolation(f"more than {bound} rounds")
        if res.center is not None:
            center = res.center
            break
        R = res.region
    return MedianRun(center, len(cases), tuple(cases))
