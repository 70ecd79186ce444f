import numpy as np
import pytest

from gpcenter import families as F
from gpcenter.cb import (
    center_cb,
    clique_eccentricities_cb,
    clique_gate_status,
    improve_eccentricity_cb,
    minimize_ball1_cb,
    terminal_vertex,
)
from gpcenter.errors import InputError
from gpcenter.gen import corpus
from gpcenter.graph import Graph, Profile
from gpcenter.oracle import all_pairs, radius_table


def unit(g):
    return Profile.uniform(range(g.n))


def cliques(g):
    out = [(v,) for v in range(g.n)] + list(g.edges())
    out += [(a, b, c) for a, b in g.edges() for c in g.adjacency[a] if c > b and c in g.adjsets[b]]
    return out


def pentagon_pendant():
    return Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])


def test_c5_marking():
    st = clique_gate_status(F.cycle(5), (0, 1))
    assert st.marked == {3}
    assert st.witness == {3: 3}
    assert not st.has_outergate(3)


def test_p4_unmarked():
    st = clique_gate_status(F.path(4), (1,))
    assert st.marked == frozenset()
    assert st.gates.gate[3] == 2


@pytest.mark.parametrize("g", [inst.graph for inst in corpus("bridged", 6, 60)], ids=lambda g: f"n{g.n}")
def test_no_marks_on_bridged(g):
    for K in cliques(g):
        assert not clique_gate_status(g, K).marked


def brute_no_outergate(g, d, K):
    dk = d[list(K)].min(axis=0)
    out = set()
    for z in range(g.n):
        if dk[z] < 2:
            continue
        proj = [w for w in K if d[z, w] == dk[z]]
        cands = [y for y in range(g.n) if dk[y] == 1 and d[z, y] == dk[z] - 1]
        if not any(all(g.has_edge(y, w) for w in proj) for y in cands):
            out.add(z)
    return out


CB_SMALL = [inst.graph for inst in corpus("cb", 8, 80)] + [
    F.cycle(5),
    pentagon_pendant(),
    F.triangular_grid(3),
    F.one_sum([F.cycle(5), F.wheel(5), F.cycle(5), F.complete(3), F.cycle(5)], 3),
]


@pytest.mark.parametrize("g", CB_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_marking_matches_definition(g):
    d = all_pairs(g)
    for K in cliques(g):
        st = clique_gate_status(g, K)
        assert set(st.marked) == brute_no_outergate(g, d, K)
        for z, w in st.witness.items():
            dk = d[list(K)].min(axis=0)
            assert all(d[z, x] == dk[z] for x in K)
            assert d[z, w] == dk[z] - 2
            assert all(d[w, x] == 2 for x in K)


def test_clique_examples():
    c5 = F.cycle(5)
    assert clique_eccentricities_cb(c5, unit(c5), (0, 1)) == {0: 2, 1: 2}
    k3 = F.complete(3)
    assert clique_eccentricities_cb(k3, unit(k3), (0, 1, 2)) == {0: 1, 1: 1, 2: 1}
    g = pentagon_pendant()
    f = radius_table(all_pairs(g), unit(g))
    assert clique_eccentricities_cb(g, unit(g), (2, 3)) == {2: f[2], 3: f[3]}
    with pytest.raises(InputError):
        clique_eccentricities_cb(c5, unit(c5), (0, 2))


def test_minimize_and_improve_examples():
    p5 = F.path(5)
    assert minimize_ball1_cb(p5, unit(p5), 0) == 1
    assert minimize_ball1_cb(p5, unit(p5), 2) == 2
    assert improve_eccentricity_cb(p5, unit(p5), 0) == 1
    c5 = F.cycle(5)
    for v in range(5):
        assert minimize_ball1_cb(c5, unit(c5), v) == v
        assert improve_eccentricity_cb(c5, unit(c5), v) == v


@pytest.mark.parametrize("g", CB_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_cb_steps_against_oracle(g):
    d = all_pairs(g)
    cl = cliques(g)
    for s in range(10):
        pi = F.random_profile(g, s)
        f = radius_table(d, pi)
        for K in cl[s::5]:
            got = clique_eccentricities_cb(g, pi, K)
            assert all(got[w] == f[w] for w in K)
        for v in range(g.n):
            u = minimize_ball1_cb(g, pi, v)
            assert f[u] == min(f[x] for x in (v, *g.adjacency[v]))
            w = improve_eccentricity_cb(g, pi, v)
            if w != v:
                assert d[v, w] <= 2 and f[w] < f[v]
            elif f[v] > f.min():
                # the only better vertices sit at distance exactly 2
                assert not (f[d[v] != 2] < f[v]).any()


def test_terminal_examples():
    c5 = F.cycle(5)
    assert terminal_vertex(c5, unit(c5)).steps == 0
    for inst in corpus("bridged", 4, 60):
        g = inst.graph
        pi = F.random_profile(g, 1)
        f = radius_table(all_pairs(g), pi)
        assert f[terminal_vertex(g, pi, seed=2).center] == f.min()
    g = F.pentagon_tail(40, 3)
    d = all_pairs(g)
    for s in range(10):
        pi = F.random_profile(g, s, zero_one=True)
        f = radius_table(d, pi)
        for mode in ("randomized", "deterministic01"):
            assert f[terminal_vertex(g, pi, mode, seed=s).center] <= f.min() + 1
    with pytest.raises(InputError):
        terminal_vertex(c5, unit(c5), "sideways")


def test_center_examples():
    c5 = F.cycle(5)
    res = center_cb(c5, unit(c5), check=True)
    assert res.radius == 2
    lz = F.triangular_grid(3)
    pi = Profile({0: 2, 3: 5, 12: 1, 15: 3})
    f = radius_table(all_pairs(lz), pi)
    assert center_cb(lz, pi, check=True).radius == f.min()


@pytest.mark.parametrize("g", CB_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
@pytest.mark.parametrize("threshold", [None, 0, 2])
def test_center_cb_against_oracle(g, threshold):
    d = all_pairs(g)
    for s in range(12):
        pi = F.random_profile(g, s)
        f = radius_table(d, pi)
        res = center_cb(g, pi, s, check=True, degree_threshold=threshold)
        assert f[res.center] == f.min() == res.radius


def quasi_median(d, u, v, w):
    """Greedy quasi-median: push each corner as far as possible inside the
    intervals toward the other two."""

    def push(a, b, c):
        x = a
        while True:
            nxt = [y for y in np.flatnonzero(d[x] == 1)
                   if d[a, y] == d[a, x] + 1 and d[a, y] + d[y, b] == d[a, b] and d[a, y] + d[y, c] == d[a, c]]
            if not nxt:
                return x
            x = int(min(nxt))

    u2 = push(u, v, w)
    v2 = push(v, u2, w)
    w2 = push(w, u2, v2)
    return u2, v2, w2


def metric_triangle(d, a, b, c):
    def meet(x, y, z):
        return np.flatnonzero((d[x] + d[y] == d[x, y]) & (d[x] + d[z] == d[x, z])).tolist() == [x]

    return meet(a, b, c) and meet(b, a, c) and meet(c, a, b)


@pytest.mark.parametrize("g", CB_SMALL, ids=lambda g: f"n{g.n}m{g.m}")
def test_triangle_law(g):
    d = all_pairs(g)
    rng = np.random.default_rng(11)
    for _ in range(150):
        u, v, w = rng.choice(g.n, size=3, replace=True).tolist()
        a, b, c = quasi_median(d, u, v, w)
        assert metric_triangle(d, a, b, c)
        sides = sorted((d[a, b], d[b, c], d[a, c]))
        if sides == [1, 2, 2]:
            continue
        assert sides[0] == sides[2]
        k = sides[0]
        for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
            inside = np.flatnonzero(d[y] + d[z] == d[y, z])
            assert (d[x, inside] == k).all()
