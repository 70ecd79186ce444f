import pytest

from gpcenter import families as F
from gpcenter.biphelly import BH_STEP
from gpcenter.bridged import WB_STEP
from gpcenter.descent import (
    DescentTrace,
    ImproveStep,
    ball_cover_sqrt,
    brute_improve,
    brute_step,
    descend,
    deterministic_descent_01,
    fpscan_descent,
    sample_select_descent,
    sample_size,
)
from gpcenter.errors import ContractError, InputError
from gpcenter.graph import Graph, Profile, center_bruteforce_small, radius_at
from gpcenter.oracle import hyperbolicity_exact


def unit(g):
    return Profile.uniform(range(g.n))


def check_trace(g, pi, trace: DescentTrace, radius: int):
    for a, b, va, vb in zip(trace.vertices, trace.vertices[1:], trace.values, trace.values[1:]):
        assert vb < va
        assert g.bfs(a)[b] <= radius
    for v, val in zip(trace.vertices, trace.values):
        assert radius_at(g, pi, v).value == val


def test_sample_select_p5():
    g = F.path(5)
    tr = sample_select_descent(g, unit(g), brute_step(2), seed=0)
    assert tr.center == 2 and tr.radius == 2


def test_sample_select_k3():
    g = F.complete(3)
    tr = sample_select_descent(g, unit(g), brute_step(2), seed=3)
    assert tr.steps == 0


def test_sample_size():
    assert sample_size(1) == 1
    assert sample_size(9) == 9
    assert sample_size(10_000) == 2764


def test_ball_cover_examples():
    assert ball_cover_sqrt(F.path(9)) == [0, 7]
    assert ball_cover_sqrt(F.complete(6)) == [0]
    assert ball_cover_sqrt(F.path(4)) == [0]


def test_ball_cover_covers():
    g = F.random_tree(200, 1)
    cover = ball_cover_sqrt(g)
    r = 2 * 15
    reach = [g.bfs(c, r) >= 0 for c in cover]
    assert all(any(row[v] for row in reach) for v in range(g.n))


def test_det01_examples():
    g = F.path(5)
    tr = deterministic_descent_01(g, unit(g), brute_step(2))
    assert tr.center == 2 and tr.steps <= 2 * (3 + 1)
    grid = F.square_grid(4, 4)
    tr = deterministic_descent_01(grid, unit(grid), BH_STEP)
    assert tr.radius == center_bruteforce_small(grid, unit(grid)).radius == 4
    single = Graph(1, [])
    tr = deterministic_descent_01(single, Profile({0: 1}), brute_step(2))
    assert tr.center == 0 and tr.steps == 0


def test_det01_rejects_weighted():
    with pytest.raises(InputError):
        deterministic_descent_01(F.path(3), Profile({0: 2}), brute_step(2))


def test_fpscan_tree():
    t = F.random_tree(40, 7)
    pi = unit(t)
    res = fpscan_descent(t, pi, 0, brute_step(1))
    assert res.trace.steps <= 1
    assert res.trace.radius == center_bruteforce_small(t, pi).radius


@pytest.mark.parametrize("g", [F.king_grid(5, 5), F.square_grid(4, 4)], ids=["king", "grid"])
def test_fpscan_oracle(g):
    pi = unit(g)
    delta = hyperbolicity_exact(g)
    res = fpscan_descent(g, pi, delta, brute_step(2))
    best = center_bruteforce_small(g, pi).radius
    assert res.trace.radius == best
    assert radius_at(g, pi, res.scan_start).value <= best + 5 * delta


def test_brute_improve_examples():
    g = F.path(5)
    pi = unit(g)
    # smallest-index improving vertex of B_2(0) is 1
    assert brute_improve(g, pi, 0, 2) == 1
    assert brute_improve(g, pi, 2, 2) == 2
    c4 = F.cycle(4)
    assert brute_improve(c4, unit(c4), 0, 1) == 0


def test_descend_contract():
    g = F.path(5)
    pi = unit(g)
    bad_move = ImproveStep(lambda g, pi, v: 4 if v == 2 else v, 2, "bad")
    with pytest.raises(ContractError):
        descend(g, pi, 2, bad_move)
    too_far = ImproveStep(lambda g, pi, v: 2 if v == 0 else v, 1, "far")
    with pytest.raises(ContractError):
        descend(g, pi, 0, too_far)


def test_descent_traces_valid_on_grid_plus_path():
    gp = F.grid_plus_path(4)
    g, pi = gp.graph, gp.profile
    for s in range(5):
        tr = sample_select_descent(g, pi, BH_STEP, s)
        check_trace(g, pi, tr, 2)
        assert tr.radius == 20


def test_wb_descent_traces_valid():
    g = F.triangular_hexagon(3)
    for s in range(5):
        pi = F.random_profile(g, s)
        tr = sample_select_descent(g, pi, WB_STEP, s)
        check_trace(g, pi, tr, 2)
        assert tr.radius == center_bruteforce_small(g, pi).radius
