from fractions import Fraction

import numpy as np
import pytest

from conftest import HOLED, L_SHAPE, SQUARE, U_SHAPE, small_polygons
from oracles import brute_max_dispersion, truth_table
from dispersive_agp.exact import (Problem, Solution, build_decision_cnf, decide, enumerate_optimal,
                                  max_dispersion, optimal_guard_sets)
from dispersive_agp.geodesic import all_pairs_vertex_dist
from dispersive_agp.geom import Point
from dispersive_agp.instances import gen_fig_disp3, gen_packing, gen_ratio_family
from dispersive_agp.witness import INF, shadow_witness_set, verify_solution

EPS, TAU = Fraction(1, 2), Fraction(1, 8)


def _split(f):
    binary = [c for c in f.clauses if len(c) == 2 and all(l < 0 for l in c)]
    return len(f.clauses) - len(binary), len(binary)


def test_cnf_counts_square():
    w, d = shadow_witness_set(SQUARE), all_pairs_vertex_dist(SQUARE)
    f = build_decision_cnf(SQUARE, w, d, 3)
    assert f.num_vars == 4 and _split(f) == (1, 6)
    f = build_decision_cnf(SQUARE, w, d, 0)
    assert f.num_vars == 4 and _split(f) == (1, 0)


def test_cnf_counts_lshape():
    f = Problem(L_SHAPE).cnf(5)
    assert f.num_vars == 6 and _split(f)[1] == 15


def test_decide_square():
    sol = decide(SQUARE, 2)
    assert set(sol.guards) in ({Point(0, 0), Point(1, 1)}, {Point(1, 0), Point(0, 1)})
    assert sol.dispersion == 2
    assert len(decide(SQUARE, 3).guards) == 1 and decide(SQUARE, 3).dispersion == INF
    with pytest.raises(ValueError):
        decide(SQUARE, 0)


def test_packing_eleven_infeasible():
    p = gen_packing(11, EPS, TAU).polygon
    assert decide(p, 2 + EPS) is None
    assert max_dispersion(p).dispersion < 2 + EPS


@pytest.mark.parametrize("c,count", [(9, 2), (10, 1), (11, 0)])
def test_packing_counts(c, count):
    assert enumerate_optimal(gen_packing(c, EPS, TAU).polygon, 2 + EPS) == count


def test_max_dispersion_examples():
    assert max_dispersion(SQUARE).dispersion == INF
    assert max_dispersion(gen_fig_disp3().polygon).dispersion == 3
    assert max_dispersion(gen_ratio_family(2).polygon).dispersion == 9


@pytest.mark.parametrize("k,p", list(enumerate(small_polygons())))
def test_matches_exhaustive(k, p):
    prob = Problem(p)
    sol = max_dispersion(p, prob)
    want = brute_max_dispersion(p, prob.witnesses.cells.cover, prob.dists)
    assert (sol.dispersion == INF) if want == "inf" else sol.dispersion == want
    assert verify_solution(p, sol.guards, sol.dispersion).ok


@pytest.mark.parametrize("p", [L_SHAPE, U_SHAPE, HOLED, gen_fig_disp3().polygon] + list(small_polygons()[10:20]))
def test_certificate_and_monotonicity(p):
    prob = Problem(p)
    sol = max_dispersion(p, prob)
    if sol.dispersion == INF:
        return
    cands = prob.dists.candidates()
    feasible = []
    for ell in cands:
        s = prob.decide(ell)
        feasible.append(s is not None)
        if s is not None:
            assert s.dispersion == INF or s.dispersion >= ell
    # feasible values form a prefix ending exactly at the optimum
    assert feasible == [ell <= sol.dispersion for ell in cands]
    assert prob.single_guard() is None


def test_enumeration_matches_truth_table():
    for p in (L_SHAPE, U_SHAPE, HOLED):
        prob = Problem(p)
        for ell in prob.dists.candidates()[:4]:
            f = prob.cnf(ell)
            assert enumerate_optimal(p, ell, cap=10**6, problem=prob) == truth_table(f.num_vars, f.clauses)[1]


def test_optimal_sets_are_valid():
    p = gen_fig_disp3().polygon
    for s in optimal_guard_sets(p, 3):
        assert verify_solution(p, sorted(s), 3, at_least=True).ok


def test_solution_json(tmp_path):
    s = Solution([Point(0, 0), Point(Fraction(5, 3), 1)], Fraction(8, 3))
    s.write(tmp_path / "s.json")
    assert Solution.read(tmp_path / "s.json") == s
    t = Solution([Point(0, 0)], INF)
    assert Solution.from_json(t.to_json()) == t


def test_probe_count_logarithmic():
    p = gen_fig_disp3().polygon
    sol = max_dispersion(p)
    n = len(all_pairs_vertex_dist(p).candidates())
    assert sol.stats["probes"] <= int(np.ceil(np.log2(n + 1))) + 1
