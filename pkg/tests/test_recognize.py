import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpcenter import families as F
from gpcenter.errors import NoWitnessError, SizeLimitError
from gpcenter.graph import Graph, radius_at
from gpcenter.oracle import (
    all_pairs,
    ball_convexity_check,
    half_balls,
    helly_family_check,
    is_Gp_unimodal_for_profile,
    radius_table,
)
from gpcenter.recognize import (
    bipartition,
    build_violating_profile,
    classify,
    is_bipartite_helly,
    is_bridged,
    is_cb_graph,
    is_cube_free_median,
    is_median,
    is_weakly_bridged,
    is_weakly_modular,
    recognize_Gp_unimodal_radius,
)

from .conftest import connected_graphs


def k23():
    return Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])


def test_weakly_modular_examples():
    assert is_weakly_modular(F.complete(3))
    c5 = is_weakly_modular(F.cycle(5))
    assert not c5 and c5.reason == "triangle condition"
    assert is_weakly_modular(F.cycle(4))


def test_median_examples():
    assert is_median(F.random_tree(30, 2))
    assert not is_median(k23())
    assert not is_median(F.cycle(6))
    assert is_median(F.hypercube(3))


def test_cube_free_median_examples():
    assert is_cube_free_median(F.square_grid(4, 4))
    assert not is_cube_free_median(F.hypercube(3))
    assert is_cube_free_median(F.simplex_graph(F.cycle(5)))


def test_bridged_examples():
    lozenge = F.triangular_grid(3)
    assert is_bridged(lozenge) and is_weakly_bridged(lozenge)
    assert not is_bridged(F.cycle(5))
    assert not is_weakly_bridged(F.cycle(5))
    w5 = F.wheel(5)
    assert is_weakly_bridged(w5)
    assert not is_bridged(w5)


def test_cb_examples():
    assert is_cb_graph(F.cycle(5))
    assert not is_cb_graph(F.cycle(4))
    assert is_cb_graph(F.triangular_grid(3))
    assert is_cb_graph(F.random_chordal(30, 1))


def test_bipartite_helly_examples():
    assert is_bipartite_helly(F.b_hat_n(4))
    assert not is_bipartite_helly(F.b_n(4))
    assert is_bipartite_helly(F.square_grid(4, 4))
    odd = is_bipartite_helly(F.cycle(5))
    assert not odd and odd.reason == "odd cycle"


def test_caps():
    with pytest.raises(SizeLimitError):
        is_median(F.path(20), cap=10)
    with pytest.raises(SizeLimitError):
        recognize_Gp_unimodal_radius(F.path(20), 1, cap=10)


def test_classify_grid():
    res = classify(F.square_grid(3, 4))
    assert res["cube-free-median"] and res["bipartite-helly"] and res["modular"]
    assert not res["weakly-bridged"]


@given(connected_graphs(max_n=9, extra=0.3))
def test_median_local_matches_triples(g):
    d = all_pairs(g)
    assert bool(is_median(g, dmat=d)) == bool(is_median(g, dmat=d, method="triples"))


@given(connected_graphs(max_n=10, extra=0.35))
def test_cb_matches_ball_convexity(g):
    assert bool(is_cb_graph(g)) == ball_convexity_check(g, full=True)


@st.composite
def bipartite_graphs(draw, max_n=10):
    """Spanning tree grown across two sides, plus random cross edges."""
    n = draw(st.integers(2, max_n))
    side = [0, 1]
    edges = {(0, 1)}
    for v in range(2, n):
        s = draw(st.integers(0, 1))
        other = [u for u in range(v) if side[u] != s]
        edges.add((draw(st.sampled_from(other)), v))
        side.append(s)
    for u in range(n):
        for v in range(u + 1, n):
            if side[u] != side[v] and draw(st.floats(0, 1)) < 0.3:
                edges.add((u, v))
    return Graph(n, sorted(edges))


@given(bipartite_graphs())
def test_bipartite_helly_matches_half_ball_helly(g):
    d = all_pairs(g)
    want = helly_family_check(half_balls(g, d, bipartition(g)))
    assert bool(is_bipartite_helly(g, dmat=d)) == want


def test_bipartite_helly_cross_check_on_larger_instances():
    graphs = [F.square_grid(5, 6), F.staircase_polyomino(6, 3), F.b_hat_n(5), F.b_n(5)]
    for g in graphs:
        d = all_pairs(g)
        assert bool(is_bipartite_helly(g, dmat=d)) == helly_family_check(half_balls(g, d, bipartition(g)))


def test_unimodal_examples():
    assert recognize_Gp_unimodal_radius(F.random_tree(30, 6), 1)
    c4 = recognize_Gp_unimodal_radius(F.cycle(4), 1)
    assert not c4 and c4.witness is not None
    assert recognize_Gp_unimodal_radius(F.cycle(4), 2)
    gp = F.grid_plus_path(2)
    assert recognize_Gp_unimodal_radius(gp.graph, 2)


def check_violating(g, u, v, p):
    vp = build_violating_profile(g, u, v, p)
    d = all_pairs(g)
    f = radius_table(d, vp.profile)
    fu = radius_at(g, vp.profile, u).value
    assert fu == 1
    assert radius_at(g, vp.profile, v).value < 1
    assert not (f[d[u] <= p] < f[u]).any()
    ok, w = is_Gp_unimodal_for_profile(g, vp.profile, p, dmat=d)
    assert not ok and w is not None


def test_violating_profiles():
    check_violating(F.cycle(4), 0, 2, 1)
    check_violating(F.cycle(6), 0, 3, 1)
    t = F.random_tree(12, 0)
    d = all_pairs(t)
    u, v = 0, int(np.argmax(d[0]))
    with pytest.raises(NoWitnessError):
        build_violating_profile(t, u, v, 1)


@given(connected_graphs(min_n=3, max_n=9, extra=0.25), st.integers(1, 2))
def test_every_false_verdict_reproduces(g, p):
    res = recognize_Gp_unimodal_radius(g, p)
    if not res:
        check_violating(g, *res.witness, p)


@given(connected_graphs(max_n=9, extra=0.3))
def test_unimodality_monotone_in_p(g):
    verdicts = [bool(recognize_Gp_unimodal_radius(g, p)) for p in (1, 2, 3)]
    for a, b in zip(verdicts, verdicts[1:]):
        assert b or not a
