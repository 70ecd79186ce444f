"""Exhaustive reference checks.

Everything here works from a full distance matrix computed by SciPy's
compiled shortest-path routine, independently of the BFS kernels the
solvers use. The checks are exact but polynomial of high degree, so each
entry point enforces a size cap.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError, SizeLimitError
from .graph import BRUTEFORCE_CAP, CenterResult, Graph, Profile, Weight

HYPERBOLICITY_CAP = 300


def _check_cap(g: Graph, cap: int | None, what: str) -> None:
    if cap is not None and g.n > cap:
        raise SizeLimitError(f"{what}: n={g.n} exceeds cap {cap}")


def all_pairs(g: Graph, cap: int | None = BRUTEFORCE_CAP) -> np.ndarray:
    """All-pairs distance matrix (int32)."""
    _check_cap(g, cap, "all_pairs")
    data = np.ones(len(g.indices), dtype=np.int8)
    mat = csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))
    d = shortest_path(mat, method="D", directed=False, unweighted=True)
    if np.isinf(d).any():
        raise InputError("graph is disconnected")
    return d.astype(np.int32)


def _matrix(g: Graph, dmat: np.ndarray | None, cap: int | None, what: str) -> np.ndarray:
    if dmat is not None:
        return dmat
    _check_cap(g, cap, what)
    return all_pairs(g, cap=None)


def radius_table(dmat: np.ndarray, pi: Profile) -> np.ndarray:
    """Radius function values of all vertices, scaled to integers for
    rational profiles so that comparisons stay exact."""
    rows = dmat[pi.support_array].astype(np.int64)
    if pi.exact:
        scale = math.lcm(*(Fraction(w).denominator for w in pi.weights.values()))
        ints = np.array([int(Fraction(w) * scale) for w in pi.weights.values()], dtype=object)
        return (ints[:, None] * rows.astype(object)).max(axis=0)
    return (pi.weight_array[:, None] * rows).max(axis=0)


def center_exact(dmat: np.ndarray, pi: Profile) -> CenterResult:
    vals = radius_table(dmat, pi)
    best = vals.min()
    centers = tuple(np.flatnonzero(vals == best).tolist())
    if pi.exact:
        r = max(pi.weights[z] * int(dmat[z, centers[0]]) for z in pi.support)
        return CenterResult(r, centers)
    return CenterResult(float(best), centers)


@dataclass(frozen=True)
class PeaklessReport:
    holds: bool
    pair: tuple[int, int] | None = None


def _wp_failures(dmat: np.ndarray, f: np.ndarray, u: int, vs: np.ndarray) -> np.ndarray:
    """Vertices of ``vs`` for which the pair (u, v) violates the weak
    peakless condition."""
    if vs.size == 0:
        return vs
    du = dmat[u]
    duv = du[vs]
    inside = (du[None, :] + dmat[vs] == duv[:, None])
    inside[:, u] = False
    inside[np.arange(vs.size), vs] = False
    fu = f[u]
    fv = f[vs]
    hi = np.maximum(fv, fu) if f.dtype != object else np.array([max(a, fu) for a in fv], dtype=object)
    lower = f[None, :] < hi[:, None]
    flat = (f[None, :] == fu) & (fv == fu)[:, None]
    ok = (inside & (lower | flat)).any(axis=1)
    return vs[~ok]


def is_p_weakly_peakless(
    g: Graph,
    pi: Profile,
    p: int,
    *,
    dmat: np.ndarray | None = None,
    window: bool = False,
    cap: int | None = BRUTEFORCE_CAP,
) -> PeaklessReport:
    """Check that every pair at distance at least ``p + 1`` has an interior
    vertex of its interval that is lower than one endpoint, or level with both.

    With ``window=True`` only pairs at distance ``p + 1 .. 2p`` are checked,
    which is equivalent and faster.
    """
    if p < 1:
        raise InputError("p must be at least 1")
    d = _matrix(g, dmat, cap, "is_p_weakly_peakless")
    f = radius_table(d, pi)
    for u in range(g.n):
        row = d[u]
        mask = row >= p + 1
        if window:
            mask &= row <= 2 * p
        mask[: u + 1] = False
        bad = _wp_failures(d, f, u, np.flatnonzero(mask))
        if bad.size:
            return PeaklessReport(False, (u, int(bad[0])))
    return PeaklessReport(True)


def wp_holds(dmat: np.ndarray, pi: Profile, u: int, v: int) -> bool:
    f = radius_table(dmat, pi)
    return _wp_failures(dmat, f, u, np.array([v])).size == 0


def is_Gp_unimodal_for_profile(
    g: Graph, pi: Profile, p: int, *, dmat: np.ndarray | None = None, cap: int | None = BRUTEFORCE_CAP
) -> tuple[bool, int | None]:
    """Whether every local minimum of the radius function in the p-th power
    is global; returns a non-global local minimum as witness otherwise."""
    d = _matrix(g, dmat, cap, "is_Gp_unimodal_for_profile")
    f = radius_table(d, pi)
    best = f.min()
    for v in range(g.n):
        if f[v] == best:
            continue
        ball = d[v] <= p
        if not (f[ball] < f[v]).any():
            return False, v
    return True, None


def hyperbolicity_exact(g: Graph, *, dmat: np.ndarray | None = None, cap: int | None = HYPERBOLICITY_CAP) -> Fraction:
    """Four-point hyperbolicity: max over quadruples of half the gap between
    the two largest of the three pair-sum distances."""
    _check_cap(g, cap, "hyperbolicity_exact")
    d = (all_pairs(g, cap=None) if dmat is None else dmat).astype(np.int32)
    n = g.n
    best = 0
    for u in range(n):
        for v in range(u + 1, n):
            s1 = d[u, v] + d
            s2 = d[u][:, None] + d[v][None, :]
            s3 = s2.T
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            gap = int((hi - (s1 + s2 + s3 - hi - lo)).max())
            best = max(best, gap)
    return Fraction(best, 2)


def ball_convexity_check(
    g: Graph, *, dmat: np.ndarray | None = None, full: bool = False, cap: int | None = BRUTEFORCE_CAP
) -> bool:
    """Whether every ball is convex.

    The default checks local convexity (intervals of pairs at distance 2);
    ``full=True`` checks every interval.
    """
    d = _matrix(g, dmat, cap, "ball_convexity_check")
    n = g.n
    if not full:
        adj = g.adjsets
        for w in range(n):
            nb = g.adjacency[w]
            for i, x in enumerate(nb):
                for y in nb[i + 1 :]:
                    if y in adj[x]:
                        continue
                    if (d[w] > np.maximum(d[x], d[y])).any():
                        return False
        return True
    for x in range(n):
        for y in range(x + 1, n):
            inside = np.flatnonzero(d[x] + d[y] == d[x, y])
            top = np.maximum(d[x], d[y])
            if (d[inside] > top[None, :]).any():
                return False
    return True


def helly_balls_check(g: Graph, family: Sequence[tuple[int, int]], *, dmat: np.ndarray | None = None) -> bool:
    """Whether the family of balls ``(center, radius)`` is either not
    pairwise intersecting or has a common vertex."""
    d = _matrix(g, dmat, BRUTEFORCE_CAP, "helly_balls_check")
    for i, (c1, r1) in enumerate(family):
        for c2, r2 in family[i + 1 :]:
            if d[c1, c2] > r1 + r2:
                return True
    common = np.ones(g.n, dtype=bool)
    for c, r in family:
        common &= d[c] <= r
    return bool(common.any())


def helly_family_check(sets: np.ndarray) -> bool:
    """Helly property of a set family given as a boolean (sets x points)
    incidence matrix.

    Uses the triple criterion: the family is Helly iff, for every three
    points, the members containing at least two of them have a common point.
    """
    sets = np.unique(np.asarray(sets, dtype=bool), axis=0)
    npts = sets.shape[1]
    s = sets.astype(np.float64)
    outside = 1.0 - s
    masks: list[list[int]] = []
    cov = np.zeros((npts, npts), dtype=bool)
    for x in range(npts):
        holders = s * s[:, x][:, None]
        # miss[y, w] > 0 iff some member holds x and y but not w
        miss = holders.T @ outside
        cov[x] = holders.sum(axis=0) > 0
        masks.append([_bits(row) for row in miss < 0.5])
    full = (1 << npts) - 1
    for x in range(npts):
        for y in range(x, npts):
            for z in range(y, npts):
                acc = full
                any_member = False
                for a, b in ((x, y), (y, z), (x, z)):
                    if cov[a, b]:
                        acc &= masks[a][b]
                        any_member = True
                if any_member and acc == 0:
                    return False
    return True


def _bits(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def half_balls(g: Graph, dmat: np.ndarray, side: np.ndarray) -> np.ndarray:
    """Incidence matrix of all half-balls ``B_r(v) & V_i``."""
    rows = []
    for i in (0, 1):
        part = side == i
        for v in range(g.n):
            for r in range(int(dmat[v].max()) + 1):
                hb = (dmat[v] <= r) & part
                if hb.any():
                    rows.append(hb)
    return np.array(rows)


def verify_coarse_helly_unimodality(
    g: Graph, pi: Profile, alpha: int, *, dmat: np.ndarray | None = None, cap: int | None = BRUTEFORCE_CAP
) -> tuple[bool, int | None]:
    """Every vertex with value above ``rad + alpha`` has a strictly better
    vertex within distance ``2 * alpha + 1``."""
    d = _matrix(g, dmat, cap, "verify_coarse_helly_unimodality")
    f = radius_table(d, pi)
    rad = f.min()
    for v in range(g.n):
        if f[v] > rad + alpha and not (f[d[v] <= 2 * alpha + 1] < f[v]).any():
            return False, v
    return True, None


@dataclass(frozen=True)
class DiamRad:
    diam: int
    rad: int
    holds: bool


def verify_diam_rad_inequality(
    g: Graph, subset: Iterable[int], alpha: int, *, dmat: np.ndarray | None = None, cap: int | None = BRUTEFORCE_CAP
) -> DiamRad:
    """Check ``2 rad(M) >= diam(M) >= 2 rad(M) - 2 alpha - 1``."""
    d = _matrix(g, dmat, cap, "verify_diam_rad_inequality")
    m = np.array(sorted(set(subset)), dtype=np.int64)
    if m.size == 0:
        raise InputError("subset is empty")
    diam = int(d[np.ix_(m, m)].max())
    rad = int(d[m].max(axis=0).min())
    return DiamRad(diam, rad, 2 * rad >= diam >= 2 * rad - 2 * alpha - 1)


def radius_of(dmat: np.ndarray, pi: Profile, v: int) -> Weight:
    vals = [pi.weights[z] * int(dmat[z, v]) for z in pi.support]
    return max(vals)
