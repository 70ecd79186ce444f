"""Centers of radius functions on graphs by local search.

A profile puts nonnegative weights on vertices; the radius function of a
vertex v is the largest weighted distance from v to the profile. On the
classes handled here every local minimum in the square of the graph is
global, so descent with a class-specific improvement step finds a center.
"""

from .biphelly import BH_STEP, improve_eccentricity_bh, interval_second_meet, k_ball_radius_01, minimize_ball1_bh
from .bridged import (
    WB_STEP,
    clique_eccentricities_wb,
    improve_eccentricity_wb,
    minimize_ball1_wb,
    shadow_partition,
)
from .cb import (
    CB_STEP,
    center_cb,
    clique_eccentricities_cb,
    clique_gate_status,
    improve_eccentricity_cb,
    minimize_ball1_cb,
    terminal_vertex,
)
from .descent import (
    DescentTrace,
    ImproveStep,
    ball_cover_sqrt,
    brute_improve,
    brute_step,
    descend,
    deterministic_descent_01,
    fpscan_descent,
    sample_select_descent,
)
from .errors import (
    ContractError,
    GenerationError,
    InputError,
    InvariantViolation,
    NoWitnessError,
    SizeLimitError,
)
from .gen import corpus, gen_family, gen_hse, gen_profile, random_hse
from .graph import (
    CenterResult,
    Graph,
    Profile,
    RadiusEvaluation,
    center_bruteforce_small,
    eccentricities,
    radius_at,
)
from .io import parse_graph, parse_profile, write_graph, write_profile
from .median import (
    cut_on_best_neighbor,
    median_vertex,
    reduce_convex_region,
    star_and_eccentricities,
    theta_classes,
)
from .solvers import RunReport, solve

__version__ = "0.1.0"

__all__ = [
    "BH_STEP",
    "CB_STEP",
    "WB_STEP",
    "CenterResult",
    "ContractError",
    "DescentTrace",
    "GenerationError",
    "Graph",
    "ImproveStep",
    "InputError",
    "InvariantViolation",
    "NoWitnessError",
    "Profile",
    "RadiusEvaluation",
    "RunReport",
    "SizeLimitError",
    "ball_cover_sqrt",
    "brute_improve",
    "brute_step",
    "center_bruteforce_small",
    "center_cb",
    "clique_eccentricities_cb",
    "clique_eccentricities_wb",
    "clique_gate_status",
    "corpus",
    "cut_on_best_neighbor",
    "descend",
    "deterministic_descent_01",
    "eccentricities",
    "fpscan_descent",
    "gen_family",
    "gen_hse",
    "gen_profile",
    "improve_eccentricity_bh",
    "improve_eccentricity_cb",
    "improve_eccentricity_wb",
    "interval_second_meet",
    "k_ball_radius_01",
    "median_vertex",
    "minimize_ball1_bh",
    "minimize_ball1_cb",
    "minimize_ball1_wb",
    "parse_graph",
    "parse_profile",
    "radius_at",
    "random_hse",
    "reduce_convex_region",
    "sample_select_descent",
    "shadow_partition",
    "solve",
    "star_and_eccentricities",
    "terminal_vertex",
    "theta_classes",
    "write_graph",
    "write_profile",
]
