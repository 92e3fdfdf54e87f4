"""L1 geodesic distances via shortest paths on the polygon-restricted Hanan grid.

Some L1 shortest path between two grid points is rectilinear with bends on
vertex coordinate lines, so the Hanan grid carries every geodesic.  Edge
weights are scaled to integers before Dijkstra, which keeps float64 sums exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .geom import OrthoPolygon, Point, contains_point

_EXACT_LIMIT = 2 ** 52


@dataclass
class HananGraph:
    xs: list[Fraction]
    ys: list[Fraction]
    nodes: list[Point]
    node_index: dict[Point, int]
    edges: list[tuple[int, int, Fraction]]
    scale: int

    @cached_property
    def matrix(self):
        n = len(self.nodes)
        if not self.edges:
            return coo_matrix((n, n)).tocsr()
        i, j, w = zip(*self.edges)
        wi = np.array([int(v * self.scale) for v in w], dtype=np.float64)
        return coo_matrix((np.r_[wi, wi], (np.r_[i, j], np.r_[j, i])), shape=(n, n)).tocsr()

    def scaled_from(self, sources) -> np.ndarray:
        return dijkstra(self.matrix, directed=False, indices=list(sources))


def _coord_scale(values) -> int:
    s = 1
    for v in values:
        s = lcm(s, Fraction(v).denominator)
    return s


def build_hanan(p: OrthoPolygon, extra_points=()) -> HananGraph:
    xs = sorted({v.x for v in p.vertices} | {q.x for q in extra_points})
    ys = sorted({v.y for v in p.vertices} | {q.y for q in extra_points})
    if extra_points:
        # arbitrary points: classify the refined grid directly
        inside = np.array([[contains_point(p, Point(x, y)) for y in ys] for x in xs])
        hseg = np.array([[contains_point(p, Point((x0 + x1) / 2, y)) for y in ys]
                         for x0, x1 in zip(xs, xs[1:])], dtype=bool).reshape(len(xs) - 1, len(ys))
        vseg = np.array([[contains_point(p, Point(x, (y0 + y1) / 2)) for y0, y1 in zip(ys, ys[1:])]
                         for x in xs], dtype=bool).reshape(len(xs), len(ys) - 1)
    else:
        inside, hseg, vseg = _grid_masks(p)
    idx = -np.ones((len(xs), len(ys)), dtype=np.int64)
    nodes = []
    for i, j in zip(*np.nonzero(inside)):
        idx[i, j] = len(nodes)
        nodes.append(Point(xs[i], ys[j]))
    edges = []
    for i, j in zip(*np.nonzero(hseg)):
        edges.append((int(idx[i, j]), int(idx[i + 1, j]), xs[i + 1] - xs[i]))
    for i, j in zip(*np.nonzero(vseg)):
        edges.append((int(idx[i, j]), int(idx[i, j + 1]), ys[j + 1] - ys[j]))
    scale = _coord_scale(xs + ys)
    span = (xs[-1] - xs[0] + ys[-1] - ys[0]) * scale * len(nodes)
    if span >= _EXACT_LIMIT:
        raise OverflowError("scaled path lengths exceed exact float range")
    return HananGraph(xs, ys, nodes, {q: k for k, q in enumerate(nodes)}, edges, scale)


def _grid_masks(p: OrthoPolygon):
    """Node and segment membership on the vertex grid, from the cell interior map."""
    cell = p.grid.interior
    nx, ny = cell.shape
    pad = np.zeros((nx + 2, ny + 2), dtype=bool)
    pad[1:-1, 1:-1] = cell
    # node (i, j) touches cells (i-1..i, j-1..j)
    inside = pad[:-1, :-1] | pad[1:, :-1] | pad[:-1, 1:] | pad[1:, 1:]
    # horizontal segment (i..i+1, j) borders cells (i, j-1) and (i, j)
    hseg = pad[1:-1, :-1] | pad[1:-1, 1:]
    # vertical segment (i, j..j+1) borders cells (i-1, j) and (i, j)
    vseg = pad[:-1, 1:-1] | pad[1:, 1:-1]
    return inside, hseg, vseg


def geodesic_dist(g: HananGraph, a: Point, b: Point) -> Fraction:
    try:
        ia, ib = g.node_index[a], g.node_index[b]
    except KeyError as e:
        raise ValueError(f"{e.args[0]} is not a node of the Hanan graph") from None
    d = g.scaled_from([ia])[0, ib]
    if not np.isfinite(d):
        raise ValueError(f"{a} and {b} are not connected")
    return Fraction(int(d), g.scale)


def point_dist(p: OrthoPolygon, a: Point, b: Point) -> Fraction:
    """Geodesic distance between arbitrary points of p (their coordinates join the grid)."""
    return geodesic_dist(build_hanan(p, (a, b)), a, b)


@dataclass
class DistanceMatrix:
    vertices: tuple[Point, ...]
    scaled: np.ndarray  # int64 distances times ``scale``
    scale: int

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(int(self.scaled[i, j]), self.scale)

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[Point, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    def dist(self, a: Point, b: Point) -> Fraction:
        return self[self.index[a], self.index[b]]

    def candidates(self) -> list[Fraction]:
        """Sorted distinct positive pairwise distances."""
        vals = np.unique(self.scaled[np.triu_indices(len(self.vertices), 1)])
        return [Fraction(int(v), self.scale) for v in vals if v > 0]

    def min_pairwise(self, idx) -> Fraction | None:
        idx = list(idx)
        if len(idx) < 2:
            return None
        sub = self.scaled[np.ix_(idx, idx)]
        return Fraction(int(sub[np.triu_indices(len(idx), 1)].min()), self.scale)


def all_pairs_vertex_dist(p: OrthoPolygon) -> DistanceMatrix:
    g = build_hanan(p)
    src = [g.node_index[v] for v in p.vertices]
    d = g.scaled_from(src)[:, src]
    if not np.all(np.isfinite(d)):
        raise ValueError("polygon vertices are not mutually reachable")
    return DistanceMatrix(p.vertices, np.rint(d).astype(np.int64), g.scale)
