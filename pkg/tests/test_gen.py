import json

import numpy as np
import pytest

from gpcenter import families as F
from gpcenter.errors import GenerationError, InputError
from gpcenter.gen import (
    CORPUS_CLASSES,
    FAMILIES,
    certify,
    corpus,
    gen_family,
    gen_hse,
    gen_profile,
    random_hse,
    write_instance,
)
from gpcenter.graph import radius_at
from gpcenter.io import parse_graph, parse_profile
from gpcenter.oracle import all_pairs, is_p_weakly_peakless, radius_table
from gpcenter.recognize import CLASS_RECOGNIZERS

SMALL_PARAMS = {
    "path": {"n": 6},
    "tree": {"n": 15},
    "cycle": {"n": 5},
    "square_grid": {"rows": 3, "cols": 4},
    "triangular_grid": {"side": 3},
    "triangular_hexagon": {"k": 2},
    "king_grid": {"rows": 3},
    "hypercube": {"r": 3},
    "simplex_graph": {"base": "bipartite", "size": 5, "p": 0.3},
    "b_n": {"n": 4},
    "b_hat_n": {"n": 4},
    "grid_plus_path": {"k": 2},
    "hse": {"x": "{1,2};{3}", "y": "{1};{2,3}"},
    "pentagon_tail": {"n": 20},
    "chordal": {"n": 25},
    "polyomino": {"width": 5},
    "wb_one_sum": {"n": 30},
    "cb_one_sum": {"n": 30},
    "bh_one_sum": {"n": 30},
}


def test_every_family_has_small_params():
    assert set(SMALL_PARAMS) == set(FAMILIES)


@pytest.mark.parametrize("family", sorted(SMALL_PARAMS))
def test_family_certifies(family):
    inst = gen_family(family, SMALL_PARAMS[family], seed=3)
    assert inst.unverified == ()
    d = all_pairs(inst.graph)
    for cls in inst.spec.classes:
        if cls in CLASS_RECOGNIZERS:
            assert CLASS_RECOGNIZERS[cls](inst.graph, dmat=d)


def test_unknown_family_and_missing_param():
    with pytest.raises(InputError):
        gen_family("moebius", {})
    with pytest.raises(InputError):
        gen_family("path", {})


def test_certify_rejects_wrong_claim():
    with pytest.raises(GenerationError):
        certify(F.cycle(6), ("cb",))
    assert certify(F.path(50), ("median",), cap=10) == ("median",)


def test_same_seed_same_graph():
    a = gen_family("wb_one_sum", {"n": 40}, seed=9)
    b = gen_family("wb_one_sum", {"n": 40}, seed=9)
    assert a.graph.edges() == b.graph.edges()


def test_hypercube_profile():
    inst = gen_family("hypercube", {"r": 3})
    u, v = inst.extra["u"], inst.extra["v"]
    for x in range(8):
        want = 2 if x in (u, v) else 3
        assert radius_at(inst.graph, inst.profile, x).value == want


def test_grid_plus_path_labels():
    inst = gen_family("grid_plus_path", {"k": 4})
    L = inst.extra
    vals = {k: radius_at(inst.graph, inst.profile, L[k]).value for k in ("c", "v", "u", "t")}
    assert vals == {"c": 20, "v": 70, "u": 50, "t": 45}


def test_hse_examples():
    yes = gen_hse("{1,2};{3}", "{1};{2,3}")
    assert yes.extra["hitting_set"]
    no = gen_hse([[0], [1]], [[0], [1]], 2)
    assert not no.extra["hitting_set"]
    with pytest.raises(InputError):
        gen_hse([[0]], [[0, 5]], 2)


@pytest.mark.parametrize("seed", range(25))
def test_hse_equivalence(seed):
    inst = random_hse(seed, 8)
    g, pi, v = inst.graph, inst.profile, inst.extra["v"]
    d = all_pairs(g)
    f = radius_table(d, pi)
    assert f[v] == 3
    for p in (1, 2):
        local_min = not (f[d[v] <= p] < f[v]).any()
        assert local_min == (not inst.extra["hitting_set"])


@pytest.mark.parametrize("seed", range(5))
def test_hse_profiles_2_peakless(seed):
    inst = random_hse(seed, 6)
    g = inst.graph
    d = all_pairs(g)
    for s in range(10):
        assert is_p_weakly_peakless(g, gen_profile(g, "weighted", s), 2, dmat=d).holds


def test_gen_profile():
    g = F.path(20)
    pi = gen_profile(g, "01", 4)
    assert pi.is_01 and 2 <= len(pi) <= 10
    w = gen_profile(g, "weighted", 4)
    assert all(1 <= x <= 10 for x in w.weights.values())
    with pytest.raises(InputError):
        gen_profile(g, "gaussian")


@pytest.mark.parametrize("cls", CORPUS_CLASSES)
def test_corpus(cls):
    insts = corpus(cls, 6, 60)
    assert len(insts) == 6
    assert all(cls in inst.spec.classes for inst in insts)
    assert max(inst.graph.n for inst in insts) <= 75


def test_write_instance(tmp_path):
    inst = gen_family("grid_plus_path", {"k": 2})
    rec = write_instance(inst, tmp_path, "gpp")
    g = parse_graph(tmp_path / rec["files"]["graph"])
    pi = parse_profile(tmp_path / rec["files"]["profile"])
    assert g.edges() == inst.graph.edges()
    assert pi.weights == inst.profile.weights
    line = json.loads((tmp_path / "manifest.jsonl").read_text().splitlines()[0])
    assert line["family"] == "grid_plus_path" and line["n"] == g.n
