import numpy as np
import pytest
from hypothesis import given

from gpcenter import families as F
from gpcenter.errors import InputError
from gpcenter.outergates import best_preneighbor_map, verify_interval_outergate

from .conftest import connected_graphs


def test_layered_distances():
    assert best_preneighbor_map(F.path(5), {0}).dist.tolist() == [0, 1, 2, 3, 4]
    assert best_preneighbor_map(F.path(5), {0, 4}).dist.tolist() == [0, 1, 2, 1, 0]
    assert best_preneighbor_map(F.cycle(5), {0}).dist.tolist() == [0, 1, 2, 2, 1]


def test_p4_gate():
    om = best_preneighbor_map(F.path(4), {0})
    assert om.gate[3] == 1
    assert om.outergate(3) == 1


def test_c5_gates():
    om = best_preneighbor_map(F.cycle(5), {0})
    assert om.gate == {2: 1, 3: 4}


def test_star_has_no_far_vertices():
    assert best_preneighbor_map(F.star(3), {0}).gate == {}


def test_empty_source():
    with pytest.raises(InputError):
        best_preneighbor_map(F.path(3), set())


def test_outergate_of_source_vertex():
    with pytest.raises(InputError):
        best_preneighbor_map(F.path(3), {0}).outergate(0)


def test_interval_outergate_examples():
    assert verify_interval_outergate(F.path(4), 0, 3) == 1
    assert verify_interval_outergate(F.cycle(6), 0, 3) is None
    assert verify_interval_outergate(F.cycle(4), 0, 2) == 0
    with pytest.raises(InputError):
        verify_interval_outergate(F.path(4), 0, 1)


@given(connected_graphs(max_n=12, extra=0.35))
def test_gate_postconditions(g):
    src = {0}
    if g.n > 2:
        src.add(g.n - 1)
    om = best_preneighbor_map(g, src)
    srcs = sorted(src)
    d = np.array([g.bfs(s) for s in srcs]).min(axis=0)
    assert np.array_equal(om.dist, d)
    for z in range(g.n):
        if d[z] == 0:
            continue
        x = om.best[z]
        assert d[x] == 1
        assert g.bfs(z)[x] == d[z] - 1
        # maximal score among all candidates in B_{d-1}(z) & N(S)
        dz = g.bfs(z)
        cands = [y for y in range(g.n) if d[y] == 1 and dz[y] == d[z] - 1]
        assert om.score[x] == max(om.score[y] for y in cands)
        if om.is_true_outergate(z):
            assert om.projection(z) <= g.adjsets[x]
