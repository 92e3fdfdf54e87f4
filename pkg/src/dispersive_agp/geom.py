"""Exact planar substrate: points, rectangles, orthogonal polygons with holes
and office-like (room/corridor) polygons.

All coordinates are :class:`fractions.Fraction`; nothing in the package rounds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

Coord = Fraction


def as_coord(value) -> Fraction:
    """Parse an int, Fraction or ``"a/b"`` string into an exact coordinate."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float coordinate {value!r}")
    raise TypeError(f"cannot interpret {value!r} as a coordinate")


def format_coord(value: Fraction):
    """Integers stay integers, everything else becomes ``"a/b"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(as_coord(x), as_coord(y))

    def l1(self, other: "Point") -> Fraction:
        return abs(self.x - other.x) + abs(self.y - other.y)

    def __repr__(self):
        return f"Point({format_coord(self.x)!s}, {format_coord(self.y)!s})"


class Rect(NamedTuple):
    lo: Point
    hi: Point

    @classmethod
    def of(cls, x1, y1, x2, y2) -> "Rect":
        r = cls(Point.of(x1, y1), Point.of(x2, y2))
        if not (r.lo.x < r.hi.x and r.lo.y < r.hi.y):
            raise ValueError(f"rectangle {r} has no area")
        return r

    @classmethod
    def spanning(cls, a: Point, b: Point) -> "Rect":
        """Closed bounding box of two points; may be degenerate."""
        return cls(Point(min(a.x, b.x), min(a.y, b.y)), Point(max(a.x, b.x), max(a.y, b.y)))

    @property
    def width(self) -> Fraction:
        return self.hi.x - self.lo.x

    @property
    def height(self) -> Fraction:
        return self.hi.y - self.lo.y

    @property
    def corners(self) -> tuple[Point, Point, Point, Point]:
        """bottom-left, bottom-right, top-right, top-left"""
        return (self.lo, Point(self.hi.x, self.lo.y), self.hi, Point(self.lo.x, self.hi.y))

    @property
    def center(self) -> Point:
        return Point((self.lo.x + self.hi.x) / 2, (self.lo.y + self.hi.y) / 2)

    def contains(self, p: Point) -> bool:
        return self.lo.x <= p.x <= self.hi.x and self.lo.y <= p.y <= self.hi.y

    def intersects(self, other: "Rect") -> bool:
        """Closed intersection (touching counts)."""
        return (self.lo.x <= other.hi.x and other.lo.x <= self.hi.x
                and self.lo.y <= other.hi.y and other.lo.y <= self.hi.y)

    def overlaps(self, other: "Rect") -> bool:
        """Interiors intersect."""
        return (self.lo.x < other.hi.x and other.lo.x < self.hi.x
                and self.lo.y < other.hi.y and other.lo.y < self.hi.y)

    def __repr__(self):
        return "Rect({}, {}, {}, {})".format(*(format_coord(c) for c in (*self.lo, *self.hi)))


def signed_area(ring: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return s / 2


def _ring_edges(ring):
    n = len(ring)
    return [(ring[i], ring[(i + 1) % n]) for i in range(n)]


def scaled_ints(values) -> tuple[np.ndarray, int]:
    """Exact integer images of rationals under a common denominator."""
    values = [Fraction(v) for v in values]
    scale = 1
    for v in values:
        scale = lcm(scale, v.denominator)
    ints = [v.numerator * (scale // v.denominator) for v in values]
    dtype = np.int64 if all(abs(t) < 2 ** 61 for t in ints) else object
    return np.array(ints, dtype=dtype), scale


def _edge_contacts(p: "OrthoPolygon"):
    """Ring index per edge and the matrix of edge pairs whose closed boxes meet."""
    ring_of = np.concatenate([[k] * len(r) for k, r in enumerate(p.rings)])
    ends = [c for a, b in p.edges for c in (a.x, b.x, a.y, b.y)]
    v, _ = scaled_ints(ends)
    v = v.reshape(-1, 4)
    x0, x1 = np.minimum(v[:, 0], v[:, 1]), np.maximum(v[:, 0], v[:, 1])
    y0, y1 = np.minimum(v[:, 2], v[:, 3]), np.maximum(v[:, 2], v[:, 3])
    meet = ((np.maximum(x0[:, None], x0[None, :]) <= np.minimum(x1[:, None], x1[None, :]))
            & (np.maximum(y0[:, None], y0[None, :]) <= np.minimum(y1[:, None], y1[None, :])))
    return ring_of, meet


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.ok

    def raise_if_failed(self, what="polygon"):
        if self.errors:
            raise ValueError(f"invalid {what}: " + "; ".join(self.errors))


@dataclass(frozen=True)
class OrthoPolygon:
    """Orthogonal polygon: CCW outer ring plus CW hole rings."""

    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()

    @classmethod
    def from_coords(cls, outer, holes=()) -> "OrthoPolygon":
        return cls(tuple(Point.of(x, y) for x, y in outer),
                   tuple(tuple(Point.of(x, y) for x, y in h) for h in holes))

    @property
    def rings(self) -> tuple[tuple[Point, ...], ...]:
        return (self.outer, *self.holes)

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(p for ring in self.rings for p in ring)

    @cached_property
    def vertex_index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        """Directed boundary edges; the polygon interior lies to the left."""
        return tuple(e for ring in self.rings for e in _ring_edges(ring))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def bbox(self) -> Rect:
        xs = [p.x for p in self.outer]
        ys = [p.y for p in self.outer]
        return Rect(Point(min(xs), min(ys)), Point(max(xs), max(ys)))

    @cached_property
    def grid(self) -> "CoordGrid":
        return CoordGrid(self)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for p in self.vertices for c in p)

    def __repr__(self):
        return f"OrthoPolygon(n={self.n}, holes={len(self.holes)})"


class CoordGrid:
    """Cells of the grid spanned by all vertex x- and y-coordinates.

    ``interior[i, j]`` tells whether the open cell ``(xs[i], xs[i+1]) x (ys[j], ys[j+1])``
    lies inside the polygon.  Every cell is either fully inside or fully outside.
    """

    def __init__(self, poly: OrthoPolygon):
        self.xs = sorted({p.x for p in poly.vertices})
        self.ys = sorted({p.y for p in poly.vertices})
        self.ix = {x: i for i, x in enumerate(self.xs)}
        self.iy = {y: j for j, y in enumerate(self.ys)}
        nx, ny = len(self.xs) - 1, len(self.ys) - 1
        toggles = np.zeros((nx, ny + 1), dtype=np.int8)
        for a, b in poly.edges:
            if a.y == b.y:
                i0, i1 = sorted((self.ix[a.x], self.ix[b.x]))
                toggles[i0:i1, self.iy[a.y]] ^= 1
        self.interior = (np.cumsum(toggles, axis=1)[:, :ny] % 2).astype(bool)

    @property
    def shape(self) -> tuple[int, int]:
        return self.interior.shape

    def cell_rect(self, i: int, j: int) -> Rect:
        return Rect(Point(self.xs[i], self.ys[j]), Point(self.xs[i + 1], self.ys[j + 1]))

    def cell_center(self, i: int, j: int) -> Point:
        return Point((self.xs[i] + self.xs[i + 1]) / 2, (self.ys[j] + self.ys[j + 1]) / 2)

    def cells_in(self, r: Rect) -> tuple[slice, slice]:
        """Index slices of the cells inside ``r``; corners of r must be grid coordinates."""
        return (slice(self.ix[r.lo.x], self.ix[r.hi.x]), slice(self.iy[r.lo.y], self.iy[r.hi.y]))

    def node_inside(self, i: int, j: int) -> bool:
        """Closed containment of grid point (xs[i], ys[j])."""
        nx, ny = self.interior.shape
        for di in (i - 1, i):
            for dj in (j - 1, j):
                if 0 <= di < nx and 0 <= dj < ny and self.interior[di, dj]:
                    return True
        return False


# --------------------------------------------------------------------------- predicates

def _on_boundary(p: OrthoPolygon, q: Point) -> bool:
    for a, b in p.edges:
        if min(a.x, b.x) <= q.x <= max(a.x, b.x) and min(a.y, b.y) <= q.y <= max(a.y, b.y):
            return True
    return False


def _strictly_inside(p: OrthoPolygon, q: Point) -> bool:
    """Parity test for a point known not to be on the boundary."""
    inside = False
    for a, b in p.edges:
        if a.x == b.x and a.x > q.x:
            lo, hi = (a.y, b.y) if a.y < b.y else (b.y, a.y)
            if lo <= q.y < hi:
                inside = not inside
    return inside


def contains_point(p: OrthoPolygon, q: Point) -> bool:
    """Closed containment: boundary points count as inside."""
    return _on_boundary(p, q) or _strictly_inside(p, q)


def _contains_axis_segment(p: OrthoPolygon, a: Point, b: Point) -> bool:
    if not (contains_point(p, a) and contains_point(p, b)):
        return False
    if a == b:
        return True
    horizontal = a.y == b.y
    lo, hi = (a.x, b.x) if horizontal else (a.y, b.y)
    if lo > hi:
        lo, hi = hi, lo
    cuts = {lo, hi}
    for e0, e1 in p.edges:
        for v in (e0, e1):
            t, s = (v.x, v.y) if horizontal else (v.y, v.x)
            if s == (a.y if horizontal else a.x) and lo < t < hi:
                cuts.add(t)
        if horizontal and e0.x == e1.x and lo < e0.x < hi:
            if min(e0.y, e1.y) <= a.y <= max(e0.y, e1.y):
                cuts.add(e0.x)
        if not horizontal and e0.y == e1.y and lo < e0.y < hi:
            if min(e0.x, e1.x) <= a.x <= max(e0.x, e1.x):
                cuts.add(e0.y)
    cuts = sorted(cuts)
    for s, t in zip(cuts, cuts[1:]):
        m = (s + t) / 2
        q = Point(m, a.y) if horizontal else Point(a.x, m)
        if not contains_point(p, q):
            return False
    return True


def contains_rect(p: OrthoPolygon, r: Rect) -> bool:
    """Is the closed rectangle ``r`` (possibly degenerate) a subset of the closed polygon?"""
    if r.lo.x == r.hi.x or r.lo.y == r.hi.y:
        return _contains_axis_segment(p, r.lo, r.hi)
    for a, b in p.edges:
        if (min(a.x, b.x) < r.hi.x and max(a.x, b.x) > r.lo.x
                and min(a.y, b.y) < r.hi.y and max(a.y, b.y) > r.lo.y):
            return False
    return _strictly_inside(p, r.center)


# --------------------------------------------------------------------------- validation

def validate_ortho(p: OrthoPolygon) -> ValidationReport:
    rep = ValidationReport()
    for k, ring in enumerate(p.rings):
        name = "outer ring" if k == 0 else f"hole {k - 1}"
        if len(ring) < 2:
            rep.errors.append(f"{name}: needs an even number (>= 4) of vertices")
            continue
        edges = _ring_edges(ring)
        bad = len(ring) < 4 or len(ring) % 2 == 1
        if bad:
            rep.errors.append(f"{name}: needs an even number (>= 4) of vertices")
        for i, (a, b) in enumerate(edges):
            if a == b:
                rep.errors.append(f"{name}: zero-length edge at {a}")
                bad = True
            elif a.x != b.x and a.y != b.y:
                rep.errors.append(f"{name}: non-axis-parallel edge {a} -> {b}")
                bad = True
        if bad:
            continue
        for (a, b), (c, d) in zip(edges, edges[1:] + edges[:1]):
            if (a.x == b.x) == (c.x == d.x):
                rep.errors.append(f"{name}: consecutive edges do not alternate at {b}")
        area = signed_area(ring)
        if k == 0 and area <= 0:
            rep.errors.append("outer ring: orientation must be counter-clockwise")
        if k > 0 and area >= 0:
            rep.errors.append(f"{name}: hole orientation must be clockwise")
    if rep.errors:
        return rep

    # simplicity of every ring and pairwise disjointness of rings
    ring_of, meet = _edge_contacts(p)
    starts = np.cumsum([0] + [len(r) for r in p.rings])
    reported = set()
    for i, j in zip(*np.nonzero(np.triu(meet, 1))):
        k1, k2 = int(ring_of[i]), int(ring_of[j])
        if k1 == k2:
            n = len(p.rings[k1])
            a, b = i - starts[k1], j - starts[k1]
            if b == a + 1 or (a == 0 and b == n - 1):
                continue
            msg = f"ring {k1}: self-intersection near {p.rings[k1][a]}"
        else:
            msg = "hole touches outer ring" if k1 == 0 else f"holes {k1 - 1} and {k2 - 1} intersect"
        if (k1, k2) not in reported:
            reported.add((k1, k2))
            rep.errors.append(msg)
    if rep.errors:
        return rep
    outer_only = OrthoPolygon(p.outer)
    for k, hole in enumerate(p.holes):
        if not _strictly_inside(outer_only, hole[0]):
            rep.errors.append(f"hole {k} lies outside the outer ring")
    for k1, k2 in combinations(range(len(p.holes)), 2):
        h1, h2 = OrthoPolygon(p.holes[k1][::-1]), OrthoPolygon(p.holes[k2][::-1])
        if _strictly_inside(h1, p.holes[k2][0]) or _strictly_inside(h2, p.holes[k1][0]):
            rep.errors.append(f"holes {k1} and {k2} are nested")
    return rep


# --------------------------------------------------------------------------- offices

@dataclass(frozen=True)
class Corridor:
    rect: Rect
    rooms: tuple[int, int]
    orientation: str | None = None  # "horizontal" | "vertical"; derived when omitted


@dataclass(frozen=True)
class OfficePolygon:
    rooms: tuple[Rect, ...]
    corridors: tuple[Corridor, ...] = ()

    @cached_property
    def polygon(self) -> OrthoPolygon:
        return office_to_polygon(self)

    def corridor_orientation(self, k: int) -> str:
        c = self.corridors[k]
        return c.orientation or _corridor_side(self.rooms[c.rooms[0]], c.rect)[0]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self.all_rects() for p in r for v in p)

    def all_rects(self) -> list[Rect]:
        return list(self.rooms) + [c.rect for c in self.corridors]


def _corridor_side(room: Rect, c: Rect):
    """Which side of ``room`` the corridor attaches to, and whether it is strictly narrower.

    Returns (orientation, side, strict) or (None, None, False) when they do not share a side.
    """
    if c.lo.y == room.hi.y or c.hi.y == room.lo.y:
        if c.lo.x <= room.hi.x and c.hi.x >= room.lo.x:
            side = "top" if c.lo.y == room.hi.y else "bottom"
            strict = room.lo.x < c.lo.x and c.hi.x < room.hi.x
            return "vertical", side, strict
    if c.lo.x == room.hi.x or c.hi.x == room.lo.x:
        if c.lo.y <= room.hi.y and c.hi.y >= room.lo.y:
            side = "right" if c.lo.x == room.hi.x else "left"
            strict = room.lo.y < c.lo.y and c.hi.y < room.hi.y
            return "horizontal", side, strict
    return None, None, False


def corridor_attachment(o: OfficePolygon, k: int, room: int) -> str:
    """Side of room ``room`` at which corridor ``k`` attaches (top/bottom/left/right)."""
    side = _corridor_side(o.rooms[room], o.corridors[k].rect)[1]
    if side is None:
        raise ValueError(f"corridor {k} does not touch room {room}")
    return side


def validate_office(o: OfficePolygon) -> ValidationReport:
    rep = ValidationReport()
    nr = len(o.rooms)
    if nr == 0:
        rep.errors.append("office has no rooms")
        return rep
    for i, j in combinations(range(nr), 2):
        if o.rooms[i].intersects(o.rooms[j]):
            rep.errors.append(f"rooms {i} and {j} touch or overlap")
    room_corners = {p for r in o.rooms for p in r.corners}
    for k, c in enumerate(o.corridors):
        a, b = c.rooms
        if not (0 <= a < nr and 0 <= b < nr) or a == b:
            rep.errors.append(f"corridor {k}: must reference two distinct rooms")
            continue
        touching = [i for i in range(nr) if o.rooms[i].intersects(c.rect)]
        if sorted(touching) != sorted((a, b)):
            rep.errors.append(f"corridor {k}: touches {len(touching)} room(s) {touching}, expected rooms {a},{b}")
        sides = [_corridor_side(o.rooms[i], c.rect) for i in (a, b)]
        orients = {s[0] for s in sides}
        if None in orients or len(orients) != 1:
            rep.errors.append(f"corridor {k}: does not join rooms {a} and {b} along opposite sides")
            continue
        if {s[1] for s in sides} not in ({"top", "bottom"}, {"left", "right"}):
            rep.errors.append(f"corridor {k}: attaches to the same side of both rooms")
        if not all(s[2] for s in sides):
            rep.errors.append(f"corridor {k}: not strictly narrower than its rooms")
        if c.orientation is not None and c.orientation != sides[0][0]:
            rep.errors.append(f"corridor {k}: declared {c.orientation} but is {sides[0][0]}")
        if any(p in room_corners for p in c.rect.corners):
            rep.errors.append(f"corridor {k}: a corridor vertex coincides with a room vertex")
        for i in (a, b):
            if o.rooms[i].overlaps(c.rect):
                rep.errors.append(f"corridor {k}: overlaps the interior of room {i}")
    for k1, k2 in combinations(range(len(o.corridors)), 2):
        if o.corridors[k1].rect.intersects(o.corridors[k2].rect):
            rep.errors.append(f"corridors {k1} and {k2} touch or overlap")
    if rep.errors:
        return rep
    # connectivity of the room graph
    adj = {i: set() for i in range(nr)}
    for c in o.corridors:
        a, b = c.rooms
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nr:
        rep.errors.append("union of rooms and corridors is disconnected")
    # minimum vertex distance 1 is an expository assumption only
    pts = sorted(room_corners | {p for c in o.corridors for p in c.rect.corners})
    v, scale = scaled_ints([c for q in pts for c in q])
    v = v.reshape(-1, 2)
    d = np.abs(v[:, None, 0] - v[None, :, 0]) + np.abs(v[:, None, 1] - v[None, :, 1])
    np.fill_diagonal(d, scale)
    close = np.argwhere(d < scale)
    if len(close):
        a, b = close[0]
        rep.warnings.append(f"vertices {pts[a]} and {pts[b]} are closer than 1")
    return rep


def office_to_polygon(o: OfficePolygon) -> OrthoPolygon:
    """Boundary of the union of all room and corridor rectangles."""
    rects = o.all_rects()
    xs = sorted({v for r in rects for v in (r.lo.x, r.hi.x)})
    ys = sorted({v for r in rects for v in (r.lo.y, r.hi.y)})
    ix = {x: i for i, x in enumerate(xs)}
    iy = {y: j for j, y in enumerate(ys)}
    occ = np.zeros((len(xs) + 1, len(ys) + 1), dtype=bool)  # padded by one on the high side
    for r in rects:
        occ[ix[r.lo.x]:ix[r.hi.x], iy[r.lo.y]:iy[r.hi.y]] = True
    return _trace_cells(occ, xs, ys)


def _trace_cells(occ, xs, ys) -> OrthoPolygon:
    nxt: dict[tuple[int, int], tuple[int, int]] = {}

    def add(a, b):
        if a in nxt:
            raise ValueError(f"union is pinched at ({xs[a[0]]}, {ys[a[1]]})")
        nxt[a] = b

    def filled(i, j):
        return i >= 0 and j >= 0 and occ[i, j]

    for i, j in zip(*np.nonzero(occ)):
        i, j = int(i), int(j)
        if not filled(i, j - 1):
            add((i, j), (i + 1, j))
        if not filled(i + 1, j):
            add((i + 1, j), (i + 1, j + 1))
        if not filled(i, j + 1):
            add((i + 1, j + 1), (i, j + 1))
        if not filled(i - 1, j):
            add((i, j + 1), (i, j))
    rings = []
    todo = set(nxt)
    while todo:
        start = min(todo)
        loop = [start]
        todo.discard(start)
        cur = nxt[start]
        while cur != start:
            loop.append(cur)
            todo.discard(cur)
            cur = nxt[cur]
        # drop collinear points
        pts = []
        m = len(loop)
        for k in range(m):
            a, b, c = loop[k - 1], loop[k], loop[(k + 1) % m]
            if (a[0] == b[0] == c[0]) or (a[1] == b[1] == c[1]):
                continue
            pts.append(b)
        k0 = pts.index(min(pts, key=lambda t: (t[1], t[0])))
        pts = pts[k0:] + pts[:k0]
        rings.append(tuple(Point(xs[i], ys[j]) for i, j in pts))
    outers = [r for r in rings if signed_area(r) > 0]
    holes = [r for r in rings if signed_area(r) < 0]
    if len(outers) != 1:
        raise ValueError(f"union of rectangles is disconnected ({len(outers)} components)")
    holes.sort(key=lambda r: (r[0].y, r[0].x))
    return OrthoPolygon(outers[0], tuple(holes))


def polygon_from_cells(cells, xs=None, ys=None) -> OrthoPolygon:
    """Polygon from a boolean occupancy array over unit (or given) coordinates."""
    cells = np.asarray(cells, dtype=bool)
    nx, ny = cells.shape
    xs = [Fraction(v) for v in (xs if xs is not None else range(nx + 1))]
    ys = [Fraction(v) for v in (ys if ys is not None else range(ny + 1))]
    occ = np.zeros((nx + 1, ny + 1), dtype=bool)
    occ[:nx, :ny] = cells
    return _trace_cells(occ, xs, ys)
