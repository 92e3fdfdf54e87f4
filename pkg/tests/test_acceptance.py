"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run with pytest, or directly: python3 tests/test_acceptance.py
"""
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import independent_offices, integer_offices, medium_polygons, rational_offices, two_rooms  # noqa: E402
from oracles import brute_max_dispersion, lattice_bfs  # noqa: E402
from dispersive_agp import cli, dp  # noqa: E402
from dispersive_agp.exact import Problem, decide, enumerate_optimal, max_dispersion  # noqa: E402
from dispersive_agp.geodesic import all_pairs_vertex_dist  # noqa: E402
from dispersive_agp.instances import (gen_fig_disp3, gen_packing, gen_random_orthogonal,  # noqa: E402
                                      gen_ratio_family, ratio_dispersive_guards, ratio_small_guards,
                                      write_instance)
from dispersive_agp.visibility import rvis_polygon, sees  # noqa: E402
from dispersive_agp.witness import verify_coverage, verify_solution  # noqa: E402
from dispersive_agp.worstcase import wall_discipline, wc2, wc3  # noqa: E402

EPS, TAU = Fraction(1, 2), Fraction(1, 8)


def criterion_1():
    o = gen_fig_disp3()
    t = time.perf_counter()
    opt = max_dispersion(o.polygon).dispersion
    sol = wc3(o)
    rep = verify_solution(o.polygon, sol.guards, sol.dispersion)
    secs = time.perf_counter() - t
    ok = opt == 3 and sol.dispersion == 3 and rep.ok and secs < 5
    return ok, f"optimum {opt}, wc3 {sol.dispersion} verified={rep.ok}, {secs:.2f}s"


def criterion_2():
    bad = []
    offices = list(integer_offices(200, 5, 40, base=10_000))
    for k, o in enumerate(offices):
        sol = wc3(o)
        corridor_guards = [g for g, ph in zip(sol.guards, sol.stats["phase"]) if ph < 3]
        if not verify_solution(o.polygon, sol.guards, 3, at_least=True).ok or wall_discipline(o, corridor_guards):
            bad.append(k)
    holed = sum(1 for o in offices if o.polygon.holes)
    return not bad, f"{len(offices)} offices ({holed} with holes), failures {bad}"


def criterion_3():
    bad = []
    offices = list(rational_offices(200, 2, 20, base=20_000))
    for k, o in enumerate(offices):
        sol = wc2(o)
        if not verify_solution(o.polygon, sol.guards, 2, at_least=True).ok:
            bad.append(k)
    rational = sum(1 for o in offices if not o.is_integral())
    return not bad, f"{len(offices)} offices ({rational} non-integral), failures {bad}"


def criterion_4():
    ell = 2 + EPS
    parts, ok = [], True
    t = time.perf_counter()
    p11 = gen_packing(11, EPS, TAU).polygon
    infeasible = decide(p11, ell) is None
    ok &= infeasible and time.perf_counter() - t < 30
    parts.append(f"11: infeasible={infeasible}")
    for c, want in ((10, 1), (9, 2)):
        t = time.perf_counter()
        n = enumerate_optimal(gen_packing(c, EPS, TAU).polygon, ell)
        ok &= n == want and time.perf_counter() - t < 30
        parts.append(f"{c}: {n} sets (want {want})")
    return ok, ", ".join(parts)


def criterion_5():
    ok, parts = True, []
    t = time.perf_counter()
    for k in (2, 3):
        o = gen_ratio_family(k)
        opt = max_dispersion(o.polygon).dispersion
        small = verify_coverage(o.polygon, ratio_small_guards(k))
        blue = ratio_dispersive_guards(k)
        rep = verify_solution(o.polygon, blue, 4 * k + 1)
        ok &= opt == 4 * k + 1 and small and rep.ok
        parts.append(f"k={k}: optimum {opt}, k-set covers={small}, "
                     f"construction realizes {rep.dispersion} (want {4 * k + 1})")
    ok &= time.perf_counter() - t < 60
    return ok, "; ".join(parts)


def criterion_6():
    bad = []
    offices = list(independent_offices(100, 3, 15, base=30_000))
    for k, o in enumerate(offices):
        a, b = dp.max_dispersion_dp(o), max_dispersion(o.polygon)
        if a.dispersion != b.dispersion or not all(verify_solution(o.polygon, s.guards, s.dispersion).ok
                                                   for s in (a, b)):
            bad.append(k)
    return not bad, f"{len(offices)} offices, mismatches {bad}"


def criterion_7():
    polys = [p for p in medium_polygons() if p.n <= 14]
    bad = []
    for k, p in enumerate(polys):
        prob = Problem(p)
        got = max_dispersion(p, prob).dispersion
        want = brute_max_dispersion(p, prob.witnesses.cells.cover, prob.dists)
        if (want == "inf") != (got == "inf") or (want != "inf" and got != want):
            bad.append(k)
    return not bad, f"{len(polys)} polygons, mismatches {bad}"


def criterion_8():
    polys = [p for p in medium_polygons() if p.n <= 60]
    bad = checks = 0
    for p in polys:
        g = p.grid
        samples = [g.cell_center(i, j) for i in range(len(g.xs) - 1) for j in range(len(g.ys) - 1)
                   if g.interior[i, j]] + list(p.vertices)
        for q in p.vertices:
            v = rvis_polygon(p, q)
            for s in samples:
                checks += 1
                bad += v.contains(s) != sees(p, q, s)
    return bad == 0, f"{len(polys)} polygons, {checks} point checks, mismatches {bad}"


def _small_integer():
    extra = [gen_fig_disp3().polygon, two_rooms().polygon]
    extra += [o.polygon for o in integer_offices(40, 2, 4, base=40_000)]
    for p in list(medium_polygons()) + extra:
        if p.is_integral() and max(max(abs(v.x), abs(v.y)) for v in p.vertices) <= 20:
            yield p


def criterion_9():
    bad = pairs = count = 0
    for p in _small_integer():
        count += 1
        m = all_pairs_vertex_dist(p)
        for a in range(p.n):
            dist = lattice_bfs(p, p.vertices[a])
            for b in range(p.n):
                pairs += 1
                bad += m[a, b] != dist[int(p.vertices[b].x), int(p.vertices[b].y)]
    return bad == 0 and count > 0, f"{count} polygons, {pairs} pairs, mismatches {bad}"


def criterion_10(seeds=range(5), timeout=60.0):
    with tempfile.TemporaryDirectory() as d:
        paths = []
        for n in (100, 200, 400):
            for s in seeds:
                path = Path(d) / f"orth{n}_s{s}.json"
                write_instance(path, gen_random_orthogonal(n, seed=s))
                paths.append(path)
        rows = cli.bench(paths, "sat", timeout)
    table = cli.format_table(rows)
    big = [r for r in rows if r[1] == 400]
    ok = len(big) == len(seeds) and all(r[4] == "ok" and r[3] < 60 for r in rows)
    return ok, f"max {max(r[3] for r in big):.1f}s over {len(big)} 400-vertex instances\n{table}"


CRITERIA = {
    1: ("worst-case tightness at 3", criterion_1),
    2: ("wc3 guarantee", criterion_2),
    3: ("wc2 guarantee", criterion_3),
    4: ("packing counts", criterion_4),
    5: ("ratio family", criterion_5),
    6: ("DP equals SAT", criterion_6),
    7: ("SAT equals brute force", criterion_7),
    8: ("visibility oracle", criterion_8),
    9: ("geodesic oracle", criterion_9),
    10: ("400-vertex SAT runs", criterion_10),
}


def run_criterion(n):
    name, fn = CRITERIA[n]
    ok, detail = fn()
    return ok, f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
