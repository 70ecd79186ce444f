import pytest

from gpcenter import families as F
from gpcenter.errors import InputError, InvariantViolation
from gpcenter.gen import corpus
from gpcenter.graph import Profile
from gpcenter.oracle import all_pairs, center_exact
from gpcenter.solvers import MethodMismatch, RunReport, pick_method, solve, verify_against_brute, weight_json


def test_pick_method():
    assert pick_method(F.square_grid(3, 3)) == "median"
    assert pick_method(F.b_hat_n(4)) == "biphelly"
    assert pick_method(F.triangular_grid(3)) == "bridged"
    assert pick_method(F.cycle(5)) == "cb"
    assert pick_method(F.cycle(6)) == "brute"


def test_mismatch_has_witness():
    with pytest.raises(MethodMismatch) as exc:
        solve(F.square_grid(3, 3), Profile({0: 1}), "bridged")
    assert exc.value.verdict.witness is not None


@pytest.mark.parametrize(
    "g,method",
    [
        (F.square_grid(4, 5), "median"),
        (F.square_grid(4, 5), "biphelly"),
        (F.triangular_hexagon(2), "bridged"),
        (F.pentagon_tail(30, 2), "cb"),
        (F.cycle(7), "brute"),
        (F.square_grid(4, 5), "auto"),
    ],
)
def test_solve_matches_oracle(g, method):
    d = all_pairs(g)
    for s in range(8):
        pi = F.random_profile(g, s)
        rep = solve(g, pi, method, seed=s)
        assert rep.radius == center_exact(d, pi).radius
        verify_against_brute(g, pi, rep, dmat=d)


def test_det01_and_fpscan():
    g = F.square_grid(4, 4)
    pi = Profile.uniform([0, 5, 15])
    best = center_exact(all_pairs(g), pi).radius
    assert solve(g, pi, "biphelly", det01=True).radius == best
    rep = solve(g, pi, "fpscan", p=2)
    assert rep.radius == best and rep.seed is None
    with pytest.raises(InputError):
        solve(g, Profile({0: 2}), "fpscan")
    with pytest.raises(InputError):
        solve(g, Profile({0: 2}), "biphelly", det01=True)


def test_unknown_method():
    with pytest.raises(InputError):
        solve(F.path(3), Profile({0: 1}), "magic")


def test_verify_against_brute_raises():
    g = F.path(5)
    pi = Profile.uniform(range(5))
    with pytest.raises(InvariantViolation):
        verify_against_brute(g, pi, RunReport("fake", 4, 0, 0, 0.0))


def test_report_json():
    from fractions import Fraction

    assert weight_json(Fraction(3, 2)) == "3/2"
    assert weight_json(Fraction(4, 2)) == 2
    assert weight_json(5.0) == 5
    rep = RunReport("median", 20.0, 50, 4, 1.23456)
    assert rep.to_json()["radius"] == 20 and rep.to_json()["millis"] == 1.235


@pytest.mark.parametrize("cls,method", [("weakly-bridged", "bridged"), ("cb", "cb"), ("bipartite-helly", "biphelly")])
def test_det01_on_corpora(cls, method):
    for inst in corpus(cls, 5, 60):
        g = inst.graph
        d = all_pairs(g)
        for s in range(4):
            pi = F.random_profile(g, s, zero_one=True)
            assert solve(g, pi, method, det01=True, check=False).radius == center_exact(d, pi).radius
