"""Local-search drivers.

A driver picks a start vertex and applies an improvement step until the
step returns its input. Every move is re-evaluated: the new vertex must be
strictly better and within the step's radius, otherwise the run aborts with
:class:`ContractError`.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ContractError, InputError, InvariantViolation
from .graph import Graph, Profile, Weight, ceil_sqrt, eccentricities, radius_at

ImproveFn = Callable[[Graph, Profile, int], int]


@dataclass(frozen=True)
class ImproveStep:
    """An improvement routine and the largest distance it may move."""

    fn: ImproveFn
    radius: int
    name: str


@dataclass
class DescentTrace:
    vertices: list[int] = field(default_factory=list)
    values: list[Weight] = field(default_factory=list)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def center(self) -> int:
        return self.vertices[-1]

    @property
    def radius(self) -> Weight:
        return self.values[-1]

    @property
    def steps(self) -> int:
        return len(self.vertices) - 1


def descend(g: Graph, pi: Profile, start: int, step: ImproveStep, *, max_steps: int | None = None) -> DescentTrace:
    """Run ``step`` from ``start`` until it returns its input."""
    cur = start
    trace = DescentTrace([cur], [radius_at(g, pi, cur).value])
    while True:
        nxt = step.fn(g, pi, cur)
        if nxt == cur:
            return trace
        dist = g.bfs(nxt)
        val = radius_at(g, pi, nxt, dist).value
        if not val < trace.values[-1] or dist[cur] > step.radius:
            raise ContractError(
                f"{step.name}: move {cur} -> {nxt} is not an improvement within distance {step.radius}"
            )
        cur = nxt
        trace.vertices.append(cur)
        trace.values.append(val)
        if max_steps is not None and trace.steps > max_steps:
            raise InvariantViolation(f"{step.name}: more than {max_steps} steps")


def sample_size(n: int, c: float = 3.0) -> int:
    if n <= 1:
        return 1
    return min(n, math.ceil(c * math.sqrt(n) * math.log(n)))


def sample_select_descent(
    g: Graph, pi: Profile, step: ImproveStep, seed: int, *, c: float = 3.0
) -> DescentTrace:
    """Start from the best of ``ceil(c sqrt(n) ln n)`` random vertices."""
    pi.validate(g)
    rng = np.random.default_rng(seed)
    sample = np.sort(rng.choice(g.n, size=sample_size(g.n, c), replace=False)).tolist()
    vals = eccentricities(g, pi, sample)
    start = min(sample, key=lambda v: (vals[v], v))
    return descend(g, pi, start, step)


def ball_cover_sqrt(g: Graph) -> list[int]:
    """Greedy net of radius ``2 ceil(sqrt(n))``: repeatedly take the
    smallest uncovered vertex and cover its ball."""
    radius = 2 * ceil_sqrt(g.n)
    covered = np.zeros(g.n, dtype=bool)
    centers = []
    for v in range(g.n):
        if not covered[v]:
            centers.append(v)
            covered |= g.bfs(v, radius) >= 0
    return centers


def deterministic_descent_01(g: Graph, pi: Profile, step: ImproveStep) -> DescentTrace:
    """Descent from the best vertex of a ball cover, for 0-1 profiles.

    The number of moves is at most ``p (ceil(sqrt(n)) + 1)`` for a step of
    radius p; exceeding it raises :class:`InvariantViolation`.
    """
    pi.validate(g)
    if not pi.is_01:
        raise InputError("deterministic descent needs a 0-1 profile")
    cover = ball_cover_sqrt(g)
    vals = eccentricities(g, pi, cover)
    start = min(cover, key=lambda v: (vals[v], v))
    bound = step.radius * (ceil_sqrt(g.n) + 1)
    trace = descend(g, pi, start, step)
    if trace.steps > bound:
        raise InvariantViolation(f"deterministic descent took {trace.steps} > {bound} steps")
    return trace


@dataclass(frozen=True)
class FPScanResult:
    trace: DescentTrace
    scan_start: int
    delta: Fraction


def fpscan_descent(g: Graph, pi: Profile, delta: Fraction | float, step: ImproveStep) -> FPScanResult:
    """Descent from the midpoint of a far pair of support vertices, for 0-1
    profiles on graphs of hyperbolicity ``delta``.

    From vertex 0 take the furthest support vertex u, from u the furthest
    support vertex w, and start at the vertex ``floor(d(u, w) / 2)`` along
    the lexicographically smallest u-w geodesic.
    """
    pi.validate(g)
    if not pi.is_01:
        raise InputError("FP-scan descent needs a 0-1 profile")
    supp = pi.support_array
    d0 = g.bfs(0)
    u = int(supp[np.argmax(d0[supp])])
    du = g.bfs(u)
    w = int(supp[np.argmax(du[supp])])
    dw = g.bfs(w)
    cur = u
    for _ in range(int(du[w]) // 2):
        cur = min(x for x in g.adjacency[cur] if dw[x] == dw[cur] - 1)
    trace = descend(g, pi, cur, step)
    delta = Fraction(delta)
    if trace.steps > 5 * delta + 1:
        raise InvariantViolation(f"FP-scan descent took {trace.steps} > 5*{delta}+1 steps")
    return FPScanResult(trace, cur, delta)


def brute_improve(g: Graph, pi: Profile, v: int, p: int) -> int:
    """Smallest vertex of ``B_p(v)`` with a strictly smaller value, or v."""
    ball = g.ball(v, p)
    vals = eccentricities(g, pi, ball)
    for u in ball:
        if vals[u] < vals[v]:
            return u
    return v


def brute_step(p: int) -> ImproveStep:
    return ImproveStep(lambda g, pi, v: brute_improve(g, pi, v, p), p, f"brute-{p}")
