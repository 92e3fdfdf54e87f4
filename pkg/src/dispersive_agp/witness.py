"""Coverage on the vertex-coordinate grid and shadow witnesses.

Every visibility polygon of a vertex is a union of grid cells, so the grid
refines the arrangement of atomic visibility polygons.  A vertex at grid node
(i, j) sees a cell iff the box between them is all interior, which for a whole
quadrant is one prefix-AND over the interior map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .geodesic import DistanceMatrix, all_pairs_vertex_dist
from .geom import CoordGrid, OrthoPolygon, Point, Rect


def _quadrant_view(i: int, j: int, sx: int, sy: int):
    xsl = slice(i, None) if sx > 0 else slice(i - 1, None, -1) if i > 0 else slice(0, 0)
    ysl = slice(j, None) if sy > 0 else slice(j - 1, None, -1) if j > 0 else slice(0, 0)
    return xsl, ysl


def vertex_cover_map(grid: CoordGrid, i: int, j: int) -> np.ndarray:
    """Boolean map of the cells fully seen from grid node (xs[i], ys[j])."""
    seen = np.zeros_like(grid.interior)
    for sx in (1, -1):
        for sy in (1, -1):
            xsl, ysl = _quadrant_view(i, j, sx, sy)
            block = grid.interior[xsl, ysl]
            if block.size:
                acc = np.logical_and.accumulate(np.logical_and.accumulate(block, axis=0), axis=1)
                seen[xsl, ysl] = acc
    return seen


@dataclass
class CellGrid:
    polygon: OrthoPolygon
    cells: np.ndarray  # (m, 2) grid indices of the interior cells
    cover: np.ndarray  # (n_vertices, m) bool, cover[g, c] iff cell c lies in Vis(g)

    @property
    def grid(self) -> CoordGrid:
        return self.polygon.grid

    def __len__(self):
        return len(self.cells)

    def rect(self, c: int) -> Rect:
        i, j = self.cells[c]
        return self.grid.cell_rect(int(i), int(j))

    def center(self, c: int) -> Point:
        i, j = self.cells[c]
        return self.grid.cell_center(int(i), int(j))

    def covering(self, c: int) -> list[int]:
        return np.flatnonzero(self.cover[:, c]).tolist()

    @cached_property
    def cell_lookup(self) -> dict[tuple[int, int], int]:
        return {(int(i), int(j)): k for k, (i, j) in enumerate(self.cells)}

    def cells_in(self, r: Rect) -> list[int]:
        """Indices of interior cells inside the (grid-aligned) rectangle r."""
        si, sj = self.grid.cells_in(r)
        look = self.cell_lookup
        return [look[i, j] for i in range(si.start, si.stop) for j in range(sj.start, sj.stop)
                if (i, j) in look]


def build_cells(p: OrthoPolygon) -> CellGrid:
    g = p.grid
    cells = np.argwhere(g.interior)
    cover = np.zeros((p.n, len(cells)), dtype=bool)
    for k, v in enumerate(p.vertices):
        seen = vertex_cover_map(g, g.ix[v.x], g.iy[v.y])
        cover[k] = seen[cells[:, 0], cells[:, 1]]
    if len(cells) and not cover.any(axis=0).all():
        raise ValueError("a cell is uncoverable by vertex guards")
    return CellGrid(p, cells, cover)


def _minimal_columns(cover: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Indices of columns whose true-set is inclusion-minimal (first of each class)."""
    cols, first = np.unique(cover.T, axis=0, return_index=True)
    sizes = cols.sum(axis=1)
    f = cols.astype(np.float32)
    keep = np.ones(len(cols), dtype=bool)
    for s in range(0, len(cols), chunk):
        inter = f[s:s + chunk] @ f.T  # |a & b|
        # b strictly inside a  <=>  |a & b| == |b| and |b| < |a|
        sub = (inter == sizes[None, :]) & (sizes[None, :] < sizes[s:s + chunk, None])
        keep[s:s + chunk] = ~sub.any(axis=1)
    return np.sort(first[keep])


@dataclass
class WitnessSet:
    cells: CellGrid
    index: list[int]  # cell indices of the witnesses

    @property
    def points(self) -> list[Point]:
        return [self.cells.center(c) for c in self.index]

    def candidates(self, k: int) -> list[int]:
        return self.cells.covering(self.index[k])


def shadow_witness_set(p: OrthoPolygon, cells: CellGrid | None = None) -> WitnessSet:
    cells = cells if cells is not None else build_cells(p)
    if not cells.cover.any(axis=0).all():
        raise ValueError("uncoverable by vertex guards")
    return WitnessSet(cells, _minimal_columns(cells.cover).tolist())


def shadow_witnesses(p: OrthoPolygon) -> list[Point]:
    return shadow_witness_set(p).points


def _guard_indices(p: OrthoPolygon, guards) -> list[int]:
    idx = []
    for g in guards:
        g = Point(Fraction(g[0]), Fraction(g[1]))
        if g not in p.vertex_index:
            raise ValueError(f"guard {g} is not a polygon vertex")
        idx.append(p.vertex_index[g])
    return idx


def uncovered_cells(cells: CellGrid, guard_idx) -> np.ndarray:
    if not len(cells):
        return np.zeros(0, dtype=np.int64)
    seen = cells.cover[list(guard_idx)].any(axis=0) if len(guard_idx) else np.zeros(len(cells), bool)
    return np.flatnonzero(~seen)


def verify_coverage(p: OrthoPolygon, guards, cells: CellGrid | None = None) -> bool:
    cells = cells if cells is not None else build_cells(p)
    return uncovered_cells(cells, _guard_indices(p, guards)).size == 0


INF = "inf"


@dataclass
class VerifyReport:
    covered: bool
    dispersion: Fraction | str | None  # realized value, INF for fewer than two guards
    claimed: Fraction | str | None
    uncovered: list[Rect] = field(default_factory=list)
    closest_pair: tuple[Point, Point] | None = None
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.ok


def realized_dispersion(dists: DistanceMatrix, guard_idx):
    """Minimum pairwise geodesic distance, or INF with fewer than two guards."""
    d = dists.min_pairwise(sorted(set(guard_idx)))
    return INF if d is None else d


def closest_pair(dists: DistanceMatrix, guard_idx):
    idx = sorted(set(guard_idx))
    if len(idx) < 2:
        return None
    sub = dists.scaled[np.ix_(idx, idx)].astype(float)
    np.fill_diagonal(sub, np.inf)
    a, b = np.unravel_index(np.argmin(sub), sub.shape)
    return dists.vertices[idx[a]], dists.vertices[idx[b]]


def verify_solution(p: OrthoPolygon, guards, claimed, *, at_least=False,
                    cells: CellGrid | None = None, dists: DistanceMatrix | None = None) -> VerifyReport:
    """Check coverage and that the realized dispersion equals ``claimed``.

    With ``at_least`` the realized value only has to reach ``claimed``.
    """
    try:
        idx = _guard_indices(p, guards)
    except ValueError as e:
        return VerifyReport(False, None, claimed, errors=[str(e)])
    cells = cells if cells is not None else build_cells(p)
    dists = dists if dists is not None else all_pairs_vertex_dist(p)
    bad = uncovered_cells(cells, idx)
    rep = VerifyReport(bad.size == 0, realized_dispersion(dists, idx), claimed)
    rep.uncovered = [cells.rect(int(c)) for c in bad]
    rep.closest_pair = closest_pair(dists, idx)
    if len(set(idx)) != len(idx):
        rep.errors.append("guard list contains duplicates")
    if not idx:
        rep.errors.append("no guards")
    if bad.size:
        rep.errors.append(f"{bad.size} cell(s) uncovered, e.g. {rep.uncovered[0]}")
    if claimed is not None:
        got, want = rep.dispersion, claimed
        if isinstance(want, str) and want != INF:
            want = Fraction(want)
        if at_least:
            fine = got == INF or (want != INF and got >= want)
        else:
            fine = got == want
        if not fine:
            pair = f" between {rep.closest_pair[0]} and {rep.closest_pair[1]}" if rep.closest_pair else ""
            rep.errors.append(f"dispersion mismatch: claimed {want}, actual {got}{pair}")
    return rep
