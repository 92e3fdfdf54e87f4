import random

import numpy as np
import pytest

from conftest import HOLED, L_SHAPE, SQUARE, medium_polygons, small_polygons
from oracles import cell_cover_by_sampling
from dispersive_agp.geom import Point, Rect
from dispersive_agp.instances import gen_fig_disp3
from dispersive_agp.visibility import sees
from dispersive_agp.witness import (INF, build_cells, shadow_witness_set, shadow_witnesses,
                                    uncovered_cells, verify_coverage, verify_solution)

P = Point.of


def test_cells_square():
    c = build_cells(SQUARE)
    assert len(c) == 1 and c.cover[:, 0].all()


def test_cells_lshape():
    c = build_cells(L_SHAPE)
    assert len(c) == 3
    k = c.cells_in(Rect.of(1, 0, 2, 1))[0]
    # (1,0) is not a vertex of the L; the vertices seeing the whole cell are these four
    assert {L_SHAPE.vertices[g] for g in c.covering(k)} == {P(0, 0), P(2, 0), P(2, 1), P(1, 1)}


def test_cells_holed():
    assert len(build_cells(HOLED)) == 8


def test_witness_examples():
    assert shadow_witnesses(SQUARE) == [P("1/2", "1/2")]
    assert set(shadow_witnesses(L_SHAPE)) == {P("3/2", "1/2"), P("1/2", "3/2")}


def test_fig_disp3_witness_per_corridor():
    o = gen_fig_disp3()
    ws = shadow_witnesses(o.polygon)
    for c in o.corridors:
        assert sum(c.rect.contains(w) for w in ws) == 1


def test_verify_coverage_examples():
    assert verify_coverage(SQUARE, [P(0, 0)])
    assert not verify_coverage(L_SHAPE, [P(2, 0)])
    assert verify_coverage(L_SHAPE, [P(0, 0)])


def test_verify_solution_examples():
    assert verify_solution(SQUARE, [P(0, 0), P(1, 1)], 2).ok
    rep = verify_solution(SQUARE, [P(0, 0), P(1, 0)], 2)
    assert not rep.ok and rep.dispersion == 1
    assert any("mismatch" in e for e in rep.errors)
    assert set(rep.closest_pair) == {P(0, 0), P(1, 0)}
    rep = verify_solution(L_SHAPE, [P(2, 0)], INF)
    assert not rep.ok and rep.uncovered
    assert not verify_solution(SQUARE, [P("1/2", 0)], None).ok


@pytest.mark.parametrize("idx", range(len(medium_polygons())))
def test_cover_matrix_matches_corner_visibility(idx):
    p = medium_polygons()[idx]
    c = build_cells(p)
    assert (c.cover == cell_cover_by_sampling(p, c)).all()


@pytest.mark.parametrize("idx", range(0, len(medium_polygons()), 4))
def test_cell_cover_equals_center_visibility(idx):
    p = medium_polygons()[idx]
    c = build_cells(p)
    for k in range(len(c)):
        ctr = c.center(k)
        for g, v in enumerate(p.vertices):
            assert c.cover[g, k] == sees(p, v, ctr)


def test_witnesses_decide_coverage():
    rng = random.Random(7)
    trials = 0
    for p in small_polygons() + (HOLED,):
        c = build_cells(p)
        w = shadow_witness_set(p, c)
        for _ in range(40):
            guards = [g for g in range(p.n) if rng.random() < rng.choice([0.15, 0.3, 0.5])]
            full = uncovered_cells(c, guards).size == 0
            at_witnesses = bool(c.cover[np.ix_(guards, w.index)].any(axis=0).all()) if guards else False
            assert full == at_witnesses
            trials += 1
    assert trials >= 1000
