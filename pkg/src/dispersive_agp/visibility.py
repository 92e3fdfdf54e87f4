"""r-visibility: two points see each other iff their spanning box lies in the polygon.

``rvis_polygon`` builds Vis(q) one quadrant at a time.  In each quadrant the
visible region is a staircase of boxes whose heights shrink from left to right;
the staircase is read off the Pareto frontier of the points that block it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .geom import OrthoPolygon, Point, Rect, contains_point, contains_rect, polygon_from_cells

QUADRANTS = ((1, 1), (-1, 1), (-1, -1), (1, -1))


def sees(p: OrthoPolygon, a: Point, b: Point) -> bool:
    return contains_rect(p, Rect.spanning(a, b))


def covers_rect(p: OrthoPolygon, g: Point, r: Rect) -> bool:
    # Vis(g) is orthoconvex, so seeing the four corners means seeing the box
    return all(sees(p, g, c) for c in r.corners)


@dataclass(frozen=True)
class VisPolygon:
    origin: Point
    rects: tuple[Rect, ...]  # closed boxes, possibly degenerate; their union is Vis(origin)

    def contains(self, s: Point) -> bool:
        return any(r.contains(s) for r in self.rects)

    def intersects_open_rect(self, r: Rect) -> bool:
        return any(b.lo.x < r.hi.x and r.lo.x < b.hi.x and b.lo.y < r.hi.y and r.lo.y < b.hi.y
                   for b in self.rects)

    @cached_property
    def region(self) -> OrthoPolygon:
        """Vis(origin) as a polygon (the degenerate whiskers have no area and are dropped)."""
        solid = [r for r in self.rects if r.lo.x < r.hi.x and r.lo.y < r.hi.y]
        xs = sorted({v for r in solid for v in (r.lo.x, r.hi.x)})
        ys = sorted({v for r in solid for v in (r.lo.y, r.hi.y)})
        ix = {x: i for i, x in enumerate(xs)}
        iy = {y: j for j, y in enumerate(ys)}
        cells = np.zeros((len(xs) - 1, len(ys) - 1), dtype=bool)
        for r in solid:
            cells[ix[r.lo.x]:ix[r.hi.x], iy[r.lo.y]:iy[r.hi.y]] = True
        return polygon_from_cells(cells, xs, ys)

    def quadrant(self, sx: int, sy: int) -> list[Rect]:
        o = self.origin
        out = []
        for r in self.rects:
            xs_ok = r.lo.x >= o.x if sx > 0 else r.hi.x <= o.x
            ys_ok = r.lo.y >= o.y if sy > 0 else r.hi.y <= o.y
            if xs_ok and ys_ok:
                out.append(r)
        return out


def _ray_limit(p: OrthoPolygon, q: Point, axis: int, sign: int) -> Fraction:
    """Farthest coordinate reachable from q along an axis-parallel ray inside p."""
    qc = q[axis]
    stops = sorted({v[axis] for v in p.vertices if (v[axis] - qc) * sign > 0}, key=lambda t: t * sign)
    reach = qc
    for c in stops:
        mid = (reach + c) / 2
        probe = Point(mid, q.y) if axis == 0 else Point(q.x, mid)
        if not contains_point(p, probe):
            break
        reach = c
    return reach


def _pareto(points):
    """Minimal points under the product order, sorted by x (so y decreases)."""
    out = []
    for x, y in sorted(set(points)):
        if not out or y < out[-1][1]:
            out.append((x, y))
    return out


def _quadrant(p: OrthoPolygon, q: Point, sx: int, sy: int, xlim: Fraction, ylim: Fraction):
    """Staircase of Vis(q) in the quadrant with signs (sx, sy).

    Works in reflected coordinates where the quadrant is the first one, so
    ``xlim``/``ylim`` are the ray limits already multiplied by the signs.
    """
    qx, qy = q.x * sx, q.y * sy
    blockers = [(xlim, qy), (qx, ylim)]
    for a, b in p.edges:
        ax, ay, bx, by = a.x * sx, a.y * sy, b.x * sx, b.y * sy
        if ay == by:
            # interior lies left of the directed edge; reflect that side too
            inside_up = (a.x < b.x) == (sy > 0)
            y = ay
            x0, x1 = min(ax, bx), max(ax, bx)
            if x1 <= qx or y < qy:
                continue
            if y > qy or not inside_up:
                blockers.append((max(x0, qx), y))
        else:
            inside_right = (a.y > b.y) == (sx > 0)
            x = ax
            y0, y1 = min(ay, by), max(ay, by)
            if y1 <= qy or x < qx:
                continue
            if x > qx or not inside_right:
                blockers.append((x, max(y0, qy)))
    # is the open cell at q's corner of this quadrant inside p?
    if not _corner_cell_inside(p, q, sx, sy):
        blockers.append((qx, qy))
    stairs = _pareto(blockers)
    rects = []
    for (x1, y1), (x2, _) in zip(stairs, stairs[1:]):
        rects.append((x1, x2, qy, y1))
    rects.append((qx, qx, qy, ylim))
    rects.append((qx, xlim, qy, qy))
    out = []
    for x1, x2, y1, y2 in rects:
        a = Point(x1 * sx, y1 * sy)
        b = Point(x2 * sx, y2 * sy)
        out.append(Rect.spanning(a, b))
    return out


def _corner_cell_inside(p: OrthoPolygon, q: Point, sx: int, sy: int) -> bool:
    """Whether points just off q into the (sx, sy) quadrant lie in p."""
    g = p.grid
    xs, ys = g.xs, g.ys
    # first grid line strictly beyond q on each axis
    if sx > 0:
        nx = next((x for x in xs if x > q.x), None)
    else:
        nx = next((x for x in reversed(xs) if x < q.x), None)
    if sy > 0:
        ny = next((y for y in ys if y > q.y), None)
    else:
        ny = next((y for y in reversed(ys) if y < q.y), None)
    if nx is None or ny is None:
        return False
    probe = Point((q.x + nx) / 2, (q.y + ny) / 2)
    return contains_point(p, probe)


def rvis_polygon(p: OrthoPolygon, q: Point) -> VisPolygon:
    q = Point(Fraction(q.x), Fraction(q.y))
    if not contains_point(p, q):
        raise ValueError(f"{q} lies outside the polygon")
    lim = {(0, 1): _ray_limit(p, q, 0, 1), (0, -1): _ray_limit(p, q, 0, -1),
           (1, 1): _ray_limit(p, q, 1, 1), (1, -1): _ray_limit(p, q, 1, -1)}
    rects: list[Rect] = []
    seen = set()
    for sx, sy in QUADRANTS:
        for r in _quadrant(p, q, sx, sy, lim[0, sx] * sx, lim[1, sy] * sy):
            if r not in seen:
                seen.add(r)
                rects.append(r)
    return VisPolygon(q, tuple(rects))
