import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpcenter import families as F
from gpcenter.biphelly import (
    improve_eccentricity_bh,
    interval_second_meet,
    k_ball_radius_01,
    minimize_ball1_bh,
)
from gpcenter.errors import InputError
from gpcenter.gen import corpus
from gpcenter.graph import Profile, radius_at
from gpcenter.oracle import all_pairs, radius_table


def unit(g):
    return Profile.uniform(range(g.n))


def test_minimize_examples():
    p5 = F.path(5)
    assert minimize_ball1_bh(p5, unit(p5), 0) == 1
    c4 = F.cycle(4)
    assert minimize_ball1_bh(c4, unit(c4), 0) == 0
    grid = F.square_grid(4, 4)
    u = minimize_ball1_bh(grid, unit(grid), 0)
    assert grid.has_edge(0, u)
    assert radius_at(grid, unit(grid), u).value == radius_at(grid, unit(grid), 0).value - 1


def test_k_ball_examples():
    c4 = F.cycle(4)
    opp = Profile.uniform([0, 2])
    assert k_ball_radius_01(c4, opp, 1) == {1: 1, 3: 1}
    assert k_ball_radius_01(c4, opp, 2) == {0: 2, 1: 1, 2: 2, 3: 1}
    grid = F.square_grid(4, 4)
    corners = Profile.uniform([0, 3, 12, 15])
    # corners of the 4x4 grid are at distance 4 from every central vertex
    assert k_ball_radius_01(grid, corners, 3) == {}
    assert k_ball_radius_01(grid, corners, 4) == {5: 4, 6: 4, 9: 4, 10: 4}
    with pytest.raises(InputError):
        k_ball_radius_01(grid, Profile({0: 2}), 2)


def test_interval_meet_examples():
    grid = F.square_grid(4, 4)
    assert interval_second_meet(grid, 0, [15]) == {2, 5, 8}
    assert interval_second_meet(grid, 0, [1, 15]) == set()
    assert interval_second_meet(F.cycle(4), 0, [2]) == {2}


def test_improve_examples():
    grid = F.square_grid(4, 4)
    pi = unit(grid)
    u = improve_eccentricity_bh(grid, pi, 0)
    assert 1 <= grid.bfs(0)[u] <= 2
    assert radius_at(grid, pi, u).value < radius_at(grid, pi, 0).value
    gp = F.grid_plus_path(4)
    c = gp.labels["c"]
    assert improve_eccentricity_bh(gp.graph, gp.profile, c) == c


def test_b_hat_moves_toward_ab():
    g = F.b_hat_n(4)
    pi = unit(g)
    a, b = 8, 9
    d = all_pairs(g)
    f = radius_table(d, pi)
    for v in range(8):
        u = improve_eccentricity_bh(g, pi, v)
        if f[v] > f.min():
            assert f[u] < f[v]
            assert min(d[u, a], d[u, b]) < min(d[v, a], d[v, b])


BH_SMALL = [inst.graph for inst in corpus("bipartite-helly", 8, 70)] + [F.b_hat_n(4), F.b_hat_n(5)]


@pytest.mark.parametrize("g", BH_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_bh_steps_against_oracle(g):
    d = all_pairs(g)
    for s in range(10):
        pi = F.random_profile(g, s)
        f = radius_table(d, pi)
        for v in range(g.n):
            u = minimize_ball1_bh(g, pi, v)
            if u == v:
                assert f[v] <= min(f[x] for x in g.adjacency[v])
            else:
                assert g.has_edge(u, v) and f[u] < f[v]
            w = improve_eccentricity_bh(g, pi, v)
            if w == v:
                assert f[v] == f.min()
            else:
                assert d[v, w] <= 2 and f[w] < f[v]


@pytest.mark.parametrize("g", BH_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_k_ball_against_oracle(g):
    d = all_pairs(g)
    for s in range(6):
        pi = F.random_profile(g, s, zero_one=True)
        f = radius_table(d, pi)
        for k in (1, 2, 3, int(f.min()) + 1):
            want = {v: int(f[v]) for v in range(g.n) if f[v] <= k}
            assert k_ball_radius_01(g, pi, k) == want


@pytest.mark.parametrize("g", BH_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_interval_meet_against_oracle(g):
    d = all_pairs(g)
    rng = np.random.default_rng(g.n)
    for _ in range(30):
        v = int(rng.integers(g.n))
        X = rng.choice(g.n, size=int(rng.integers(1, 4)), replace=False).tolist()
        want = {u for u in range(g.n) if d[v, u] == 2 and all(d[v, u] + d[u, x] == d[v, x] for x in X)}
        assert interval_second_meet(g, v, X) == want


@settings(max_examples=30)
@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 1000))
def test_bipartite_parity(rows, cols, seed):
    g = F.square_grid(rows, cols)
    d = all_pairs(g)
    rng = np.random.default_rng(seed)
    v = int(rng.integers(g.n))
    for u in np.flatnonzero(d[v] == 2):
        assert set(np.unique(d[u] - d[v]).tolist()) <= {-2, 0, 2}
