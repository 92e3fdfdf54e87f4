"""Constructive guard sets with guaranteed dispersion for office-like polygons.

``wc3`` reaches 3 on integer offices by guarding vertical corridors from the
top rooms down, then horizontal corridors (the same routine on the polygon
turned 90 degrees clockwise), then any room still not covered.  ``wc2`` reaches
2 on arbitrary rational offices by a walk along the left and top walls.
"""
from __future__ import annotations

import numpy as np

from .exact import Solution
from .geodesic import all_pairs_vertex_dist
from .geom import Corridor, OfficePolygon, Point, Rect, corridor_attachment, validate_office
from .witness import build_cells, realized_dispersion


def _rot(p: Point) -> Point:
    return Point(p.y, -p.x)


def _unrot(p: Point) -> Point:
    return Point(-p.y, p.x)


def rotate_office(o: OfficePolygon) -> OfficePolygon:
    """The office turned 90 degrees clockwise, (x, y) -> (y, -x)."""
    def r(rect: Rect) -> Rect:
        return Rect.spanning(_rot(rect.lo), _rot(rect.hi))
    return OfficePolygon(tuple(r(x) for x in o.rooms),
                         tuple(Corridor(r(c.rect), c.rooms) for c in o.corridors))


def _vertical_corridors(o: OfficePolygon):
    for k, c in enumerate(o.corridors):
        a, b = c.rooms
        if corridor_attachment(o, k, a) in ("top", "bottom"):
            lower, upper = (a, b) if o.rooms[a].hi.y <= c.rect.lo.y else (b, a)
            yield k, lower, upper


def room_order(o: OfficePolygon) -> list[tuple[int, int]]:
    """Pairs (a, b) with room a below room b and a vertical corridor between them."""
    return [(lower, upper) for _, lower, upper in _vertical_corridors(o)]


class _State:
    def __init__(self, o: OfficePolygon):
        self.office = o
        self.poly = o.polygon
        self.cells = build_cells(self.poly)
        self.dists = all_pairs_vertex_dist(self.poly)
        self.guards: list[int] = []
        self.phase: list[int] = []

    def index(self, p: Point) -> int:
        return self.poly.vertex_index[p]

    def covered(self, r: Rect) -> bool:
        cells = self.cells.cells_in(r)
        if not self.guards:
            return not cells
        return bool(self.cells.cover[np.ix_(self.guards, cells)].any(axis=0).all())

    def far_from_all(self, v: int, bound) -> bool:
        if not self.guards:
            return True
        return bool((self.dists.scaled[v, self.guards] >= bound * self.dists.scale).all())

    def place(self, v: int, phase: int):
        if v not in self.guards:
            self.guards.append(v)
            self.phase.append(phase)


def _vertical_phase(state: _State, frame: OfficePolygon, back, phase: int):
    """Guard every vertical corridor of ``frame``; ``back`` maps frame points to the polygon."""
    above = {i: set() for i in range(len(frame.rooms))}
    ups = {i: [] for i in range(len(frame.rooms))}
    for k, lower, upper in _vertical_corridors(frame):
        above[lower].add(upper)
        ups[lower].append(k)
    done: set[int] = set()
    while len(done) < len(frame.rooms):
        # lowest-index room with no unprocessed room above it
        room = next(i for i in range(len(frame.rooms)) if i not in done and not (above[i] - done))
        done.add(room)
        for k in sorted(ups[room], key=lambda k: frame.corridors[k].rect.lo.x):
            rect = frame.corridors[k].rect
            orig = Rect.spanning(back(rect.lo), back(rect.hi))
            if state.covered(orig):
                continue
            bl = state.index(back(rect.lo))
            if state.far_from_all(bl, 3):
                state.place(bl, phase)
            else:
                state.place(state.index(back(Point(rect.lo.x, rect.hi.y))), phase)


def wc3(o: OfficePolygon) -> Solution:
    validate_office(o).raise_if_failed("office")
    if not o.is_integral():
        raise ValueError("wc3 needs integer coordinates")
    state = _State(o)
    _vertical_phase(state, o, lambda p: p, 1)
    _vertical_phase(state, rotate_office(o), _unrot, 2)
    for r in o.rooms:
        if not state.covered(r):
            state.place(state.index(r.hi), 3)
    return _solution(state)


def _solution(state: _State) -> Solution:
    order = sorted(range(len(state.guards)), key=lambda t: state.guards[t])
    idx = [state.guards[t] for t in order]
    sol = Solution([state.poly.vertices[g] for g in idx], realized_dispersion(state.dists, idx))
    sol.stats["phase"] = [state.phase[t] for t in order]
    return sol


def room_walk(o: OfficePolygon, r: int) -> list[Point]:
    """Boundary vertices of room r from its bottom-left corner clockwise, up the left
    wall and along the top wall, stopping before the top-right corner."""
    room = o.rooms[r]
    left, top = [], []
    for k, c in enumerate(o.corridors):
        if r not in c.rooms:
            continue
        side = corridor_attachment(o, k, r)
        if side == "left":
            left += [Point(room.lo.x, c.rect.lo.y), Point(room.lo.x, c.rect.hi.y)]
        elif side == "top":
            top += [Point(c.rect.lo.x, room.hi.y), Point(c.rect.hi.x, room.hi.y)]
    return ([room.lo] + sorted(left, key=lambda p: p.y) + [Point(room.lo.x, room.hi.y)]
            + sorted(top, key=lambda p: p.x))


def wc2(o: OfficePolygon) -> Solution:
    validate_office(o).raise_if_failed("office")
    poly = o.polygon
    guards = []
    for r in range(len(o.rooms)):
        guards += room_walk(o, r)[::2]
    idx = sorted({poly.vertex_index[g] for g in guards})
    dists = all_pairs_vertex_dist(poly)
    return Solution([poly.vertices[g] for g in idx], realized_dispersion(dists, idx))


def wall_discipline(o: OfficePolygon, guards) -> list[Point]:
    """Guards sitting on a corridor wall other than the left wall of a vertical
    corridor or the lower wall of a horizontal one."""
    bad = []
    for g in guards:
        for k, c in enumerate(o.corridors):
            r = c.rect
            if not r.contains(g):
                continue
            vertical = corridor_attachment(o, k, c.rooms[0]) in ("top", "bottom")
            ok = g.x == r.lo.x if vertical else g.y == r.lo.y
            if not ok:
                bad.append(g)
    return bad
