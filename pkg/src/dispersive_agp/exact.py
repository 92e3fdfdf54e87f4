"""Exact dispersion maximisation by SAT.

For a distance bound l the decision formula has one variable per vertex, a
coverage clause per shadow witness and a binary clause forbidding each vertex
pair closer than l.  A binary search over the pairwise distances then finds the
optimum; every satisfying model lifts the lower bound to its realized value.
"""
from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .geodesic import DistanceMatrix, all_pairs_vertex_dist
from .geom import OrthoPolygon, Point, as_coord, format_coord
from .sat import Cnf, enumerate_models, solve
from .witness import INF, WitnessSet, realized_dispersion, shadow_witness_set


def _key(d):
    """Sort key with INF above every finite value."""
    return (1, 0) if d == INF else (0, d)


@dataclass
class Solution:
    guards: list[Point]
    dispersion: Fraction | str  # INF for a single guard
    stats: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        d = self.dispersion
        return {"guards": [[format_coord(g.x), format_coord(g.y)] for g in self.guards],
                "dispersion": d if d == INF else format_coord(d)}

    @classmethod
    def from_json(cls, data: dict) -> "Solution":
        guards = [Point(as_coord(x), as_coord(y)) for x, y in data["guards"]]
        d = data.get("dispersion")
        d = INF if d == INF else as_coord(d) if d is not None else None
        return cls(guards, d)

    def write(self, path):
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def read(cls, path) -> "Solution":
        return cls.from_json(json.loads(Path(path).read_text()))


class Problem:
    """Witnesses and distances of a polygon, computed once and shared by all probes."""

    def __init__(self, p: OrthoPolygon, witnesses: WitnessSet | None = None,
                 dists: DistanceMatrix | None = None):
        self.polygon = p
        self.witnesses = witnesses if witnesses is not None else shadow_witness_set(p)
        self.dists = dists if dists is not None else all_pairs_vertex_dist(p)
        cover = self.witnesses.cells.cover[:, self.witnesses.index]
        self.coverage = [np.flatnonzero(cover[:, k]).tolist() for k in range(cover.shape[1])]

    def cnf(self, ell) -> Cnf:
        n = self.polygon.n
        f = Cnf(n)
        for cand in self.coverage:
            f.clauses.append([g + 1 for g in cand])  # empty list is the UNSAT marker
        if ell != INF:
            lim = ell * self.dists.scale
            i, j = np.nonzero(np.triu(self.dists.scaled < lim, 1))
            f.clauses.extend([-a - 1, -b - 1] for a, b in zip(i.tolist(), j.tolist()))
        else:
            f.clauses.extend([-a - 1, -b - 1] for a in range(n) for b in range(a + 1, n))
        return f

    def solution(self, guard_idx) -> Solution:
        guard_idx = sorted(guard_idx)
        return Solution([self.polygon.vertices[g] for g in guard_idx],
                        realized_dispersion(self.dists, guard_idx))

    def single_guard(self) -> Solution | None:
        cover = self.witnesses.cells.cover[:, self.witnesses.index]
        full = np.flatnonzero(cover.all(axis=1))
        return self.solution([int(full[0])]) if full.size else None

    def decide(self, ell) -> Solution | None:
        if ell == INF:
            return self.single_guard()
        # trying guards first yields maximal guard sets, which is what the
        # bound update wants and what a reader of the output expects
        m = solve(self.cnf(ell), phase=True)
        if m is None:
            return None
        sol = self.solution([v - 1 for v in m.true_vars])
        if _key(sol.dispersion) < _key(ell):
            raise AssertionError("model violates the distance bound")
        return sol


def build_decision_cnf(p: OrthoPolygon, witnesses: WitnessSet, dists: DistanceMatrix, ell) -> Cnf:
    return Problem(p, witnesses, dists).cnf(ell)


def decide(p, ell, problem: Problem | None = None) -> Solution | None:
    if ell != INF and ell <= 0:
        raise ValueError("the distance bound must be positive")
    return (problem or Problem(p)).decide(ell if ell == INF else Fraction(ell))


def max_dispersion(p: OrthoPolygon, problem: Problem | None = None) -> Solution:
    prob = problem or Problem(p)
    one = prob.single_guard()
    if one is not None:
        one.stats["probes"] = 0
        return one
    cands = prob.dists.candidates()
    # cands[lo] is known feasible, cands[hi] known infeasible (hi may be past the end)
    best = None
    lo, hi = -1, len(cands)
    probes = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probes += 1
        sol = prob.decide(cands[mid])
        if sol is None:
            hi = mid
            continue
        best = sol
        # the model may realize more than was asked for
        lo = max(mid, _position(cands, sol.dispersion))
    if best is None:
        raise AssertionError("no feasible guard set at the smallest distance")
    best.stats["probes"] = probes
    return best


def _position(cands, d) -> int:
    return bisect.bisect_left(cands, d)


def enumerate_optimal(p: OrthoPolygon, ell, cap: int = 1000, problem: Problem | None = None) -> int:
    return len(optimal_guard_sets(p, ell, cap, problem))


def optimal_guard_sets(p: OrthoPolygon, ell, cap: int = 1000, problem: Problem | None = None):
    """All guard sets (as vertex-point frozensets) with dispersion >= ell, up to ``cap``."""
    prob = problem or Problem(p)
    f = prob.cnf(ell if ell == INF else Fraction(ell))
    models = enumerate_models(f, range(1, p.n + 1), cap)
    return [frozenset(p.vertices[v - 1] for v in m) for m in models]
