"""Solver dispatch: pick a method, run it, re-check its answer."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .biphelly import BH_STEP
from .bridged import WB_STEP
from .cb import center_cb
from .descent import brute_step, deterministic_descent_01, fpscan_descent, sample_select_descent
from .errors import InputError, InvariantViolation, SizeLimitError
from .graph import BRUTEFORCE_CAP, Graph, Profile, Weight, center_bruteforce_small, radius_at
from .median import cut_on_best_neighbor
from .oracle import all_pairs, hyperbolicity_exact
from .recognize import CLASS_RECOGNIZERS, Recognition

METHODS = ("auto", "bridged", "biphelly", "median", "cb", "brute", "fpscan")
METHOD_CLASS = {
    "median": "cube-free-median",
    "biphelly": "bipartite-helly",
    "bridged": "weakly-bridged",
    "cb": "cb",
}
RECOGNITION_CAP = 4000


class MethodMismatch(InputError):
    """The graph is not in the class a method needs."""

    def __init__(self, method: str, cls: str, verdict: Recognition):
        super().__init__(f"method {method!r} needs a {cls} graph: {verdict.reason}")
        self.method = method
        self.cls = cls
        self.verdict = verdict


@dataclass
class RunReport:
    method: str
    radius: Weight
    center: int
    steps: int
    millis: float
    seed: int | None = None
    assertions: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "radius": weight_json(self.radius),
            "center": self.center,
            "steps": self.steps,
            "millis": round(self.millis, 3),
            "seed": self.seed,
            "assertions": self.assertions,
        }


def weight_json(w: Weight) -> int | float | str:
    if isinstance(w, Fraction):
        return str(w) if w.denominator != 1 else w.numerator
    if isinstance(w, float) and w.is_integer():
        return int(w)
    return w


def pick_method(g: Graph, *, cap: int = RECOGNITION_CAP) -> str:
    """Most specific solver whose recognizer accepts g."""
    if g.n > cap:
        raise SizeLimitError(f"auto needs recognition, which is capped at n <= {cap}; pass --method")
    d = all_pairs(g, cap=None)
    for method in ("median", "biphelly", "bridged", "cb"):
        if CLASS_RECOGNIZERS[METHOD_CLASS[method]](g, dmat=d):
            return method
    if g.n > BRUTEFORCE_CAP:
        raise SizeLimitError("graph is in no supported class and too large for brute force")
    return "brute"


def check_method(g: Graph, method: str, *, cap: int = RECOGNITION_CAP) -> None:
    cls = METHOD_CLASS.get(method)
    if cls is None or g.n > cap:
        return
    verdict = CLASS_RECOGNIZERS[cls](g, cap=None)
    if not verdict:
        raise MethodMismatch(method, cls, verdict)


def solve(
    g: Graph,
    pi: Profile,
    method: str = "auto",
    *,
    seed: int = 0,
    det01: bool = False,
    delta: Fraction | None = None,
    p: int = 1,
    check: bool = True,
) -> RunReport:
    """Run one solver and re-evaluate the radius at its answer by BFS.

    ``check`` runs the class recognizer first (up to a size cap) and
    refuses with :class:`MethodMismatch` on a negative verdict.
    """
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    pi.validate(g)
    if det01 and not pi.is_01:
        raise InputError("--det01 needs a 0-1 profile")
    if method == "auto":
        method = pick_method(g)
    elif check:
        check_method(g, method)
    start = time.perf_counter()
    steps = 0
    used_seed: int | None = seed
    if method in ("bridged", "biphelly"):
        step = WB_STEP if method == "bridged" else BH_STEP
        trace = deterministic_descent_01(g, pi, step) if det01 else sample_select_descent(g, pi, step, seed)
        center, steps = trace.center, trace.steps
        if det01:
            used_seed = None
    elif method == "median":
        run = cut_on_best_neighbor(g, pi)
        center, steps, used_seed = run.center, run.rounds, None
    elif method == "cb":
        res = center_cb(g, pi, seed, mode="deterministic01" if det01 else "randomized")
        center, steps = res.center, res.terminal.steps + res.iterations
        if det01:
            used_seed = None
    elif method == "brute":
        center, used_seed = center_bruteforce_small(g, pi).vertex, None
    else:
        if not pi.is_01:
            raise InputError("fpscan needs a 0-1 profile")
        if delta is None:
            delta = hyperbolicity_exact(g)
        res = fpscan_descent(g, pi, delta, brute_step(p))
        center, steps, used_seed = res.trace.center, res.trace.steps, None
    millis = (time.perf_counter() - start) * 1000.0
    radius = radius_at(g, pi, center).value
    return RunReport(method, radius, int(center), steps, millis, used_seed)


def verify_against_brute(g: Graph, pi: Profile, report: RunReport, *, dmat: np.ndarray | None = None) -> None:
    best = center_bruteforce_small(g, pi, distance_matrix=dmat).radius
    if report.radius != best:
        raise InvariantViolation(f"{report.method}: radius {report.radius} but the minimum is {best}")
