"""Instance generators and the JSON instance format.

Generators: random office-like polygons, c-eps-packings, the ratio family with
optimum 4k+1, a fixed instance whose optimum is 3, and random orthogonal
polygons grown cell by cell.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .geom import (Corridor, OfficePolygon, OrthoPolygon, Point, Rect, as_coord, format_coord,
                   polygon_from_cells, validate_office, validate_ortho)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n_rooms: int = 5
    room_size_range: tuple[int, int] = (3, 7)
    allow_holes: bool = False
    independent: bool = False  # forbid corridors that can see into each other
    max_gap: int = 3


_SIDES = ("top", "bottom", "left", "right")
_OPPOSITE = {"top": "bottom", "bottom": "top", "left": "right", "right": "left"}


def _attach(rng, room: Rect, side: str, w: int, h: int, gap: int):
    """Place a w x h room on ``side`` of ``room`` so both share >= 3 units of wall."""
    if side in ("top", "bottom"):
        # new room x-range must overlap room x-range by at least 3
        x0 = int(rng.integers(int(room.lo.x) - w + 3, int(room.hi.x) - 3 + 1))
        y0 = int(room.hi.y) + gap if side == "top" else int(room.lo.y) - gap - h
        return Rect.of(x0, y0, x0 + w, y0 + h)
    y0 = int(rng.integers(int(room.lo.y) - h + 3, int(room.hi.y) - 3 + 1))
    x0 = int(room.hi.x) + gap if side == "right" else int(room.lo.x) - gap - w
    return Rect.of(x0, y0, x0 + w, y0 + h)


def _corridor_between(rng, a: Rect, b: Rect):
    """A width-1 corridor joining facing rooms a and b, or None when they do not face."""
    if a.hi.y < b.lo.y or b.hi.y < a.lo.y:
        lo_r, hi_r = (a, b) if a.hi.y < b.lo.y else (b, a)
        x_lo = max(a.lo.x, b.lo.x) + 1
        x_hi = min(a.hi.x, b.hi.x) - 2
        if x_hi < x_lo:
            return None
        x = int(rng.integers(int(x_lo), int(x_hi) + 1))
        return Rect.of(x, lo_r.hi.y, x + 1, hi_r.lo.y)
    if a.hi.x < b.lo.x or b.hi.x < a.lo.x:
        l_r, r_r = (a, b) if a.hi.x < b.lo.x else (b, a)
        y_lo = max(a.lo.y, b.lo.y) + 1
        y_hi = min(a.hi.y, b.hi.y) - 2
        if y_hi < y_lo:
            return None
        y = int(rng.integers(int(y_lo), int(y_hi) + 1))
        return Rect.of(l_r.hi.x, y, r_r.lo.x, y + 1)
    return None


def _facing(a: Rect, b: Rect) -> bool:
    return (a.hi.y < b.lo.y or b.hi.y < a.lo.y) != (a.hi.x < b.lo.x or b.hi.x < a.lo.x)


def _dependent(office_rooms, corridors, new: Corridor) -> bool:
    """Would ``new`` see into (or be seen from) an existing corridor across a room?"""
    for r in new.rooms:
        side = _side_of(office_rooms[r], new.rect)
        for c in corridors:
            if r not in c.rooms:
                continue
            other = _side_of(office_rooms[r], c.rect)
            if other != _OPPOSITE[side]:
                continue
            if side in ("top", "bottom"):
                if c.rect.lo.x <= new.rect.hi.x and new.rect.lo.x <= c.rect.hi.x:
                    return True
            elif c.rect.lo.y <= new.rect.hi.y and new.rect.lo.y <= c.rect.hi.y:
                return True
    return False


def _side_of(room: Rect, c: Rect) -> str:
    if c.lo.y == room.hi.y:
        return "top"
    if c.hi.y == room.lo.y:
        return "bottom"
    if c.lo.x == room.hi.x:
        return "right"
    return "left"


def _clear(rect: Rect, rects, ignore=()) -> bool:
    return not any(rect.intersects(r) for k, r in enumerate(rects) if k not in ignore)


def gen_random_office(c: GenConfig, max_tries: int = 200) -> OfficePolygon:
    """Rooms on the integer lattice, each new one hooked to an existing room by a unit corridor."""
    rng = np.random.default_rng(c.seed)
    lo, hi = c.room_size_range
    if lo < 3:
        raise ValueError("rooms need size >= 3 to host a strictly narrower unit corridor")
    for attempt in range(max_tries):
        w, h = (int(v) for v in rng.integers(lo, hi + 1, 2))
        rooms = [Rect.of(0, 0, w, h)]
        corridors: list[Corridor] = []
        failed = False
        while len(rooms) < c.n_rooms:
            for _ in range(400):
                base = int(rng.integers(len(rooms)))
                side = _SIDES[int(rng.integers(4))]
                w, h = (int(v) for v in rng.integers(lo, hi + 1, 2))
                gap = int(rng.integers(1, c.max_gap + 1))
                new = _attach(rng, rooms[base], side, w, h, gap)
                corr = _corridor_between(rng, rooms[base], new)
                if corr is None:
                    continue
                if not _clear(new, rooms + [k.rect for k in corridors]):
                    continue
                if not _clear(corr, rooms + [k.rect for k in corridors], ignore=(base,)):
                    continue
                cand = Corridor(corr, (base, len(rooms)))
                if c.independent and _dependent(rooms + [new], corridors, cand):
                    continue
                rooms.append(new)
                corridors.append(cand)
                break
            else:
                failed = True
                break
        if failed:
            continue
        if c.allow_holes and c.n_rooms >= 2:
            added = _add_cycle_corridors(rng, rooms, corridors, c)
            if not added and c.n_rooms >= 4:
                continue
        office = _normalize(OfficePolygon(tuple(rooms), tuple(corridors)))
        rep = validate_office(office)
        if rep.ok:
            return office
    raise RuntimeError(f"could not generate an office with seed {c.seed} after {max_tries} tries")


def _add_cycle_corridors(rng, rooms, corridors, c: GenConfig) -> int:
    linked = {frozenset(k.rooms) for k in corridors}
    pairs = [(i, j) for i in range(len(rooms)) for j in range(i + 1, len(rooms))
             if frozenset((i, j)) not in linked and _facing(rooms[i], rooms[j])]
    rng.shuffle(pairs)
    want = max(1, len(rooms) // 4)
    added = 0
    for i, j in pairs:
        if added >= want:
            break
        corr = _corridor_between(rng, rooms[i], rooms[j])
        if corr is None:
            continue
        if not _clear(corr, rooms, ignore=(i, j)) or not _clear(corr, [k.rect for k in corridors]):
            continue
        cand = Corridor(corr, (i, j))
        if c.independent and _dependent(rooms, corridors, cand):
            continue
        corridors.append(cand)
        added += 1
    return added


def _normalize(o: OfficePolygon) -> OfficePolygon:
    """Translate so the bounding box starts at the origin."""
    rects = o.all_rects()
    dx = min(r.lo.x for r in rects)
    dy = min(r.lo.y for r in rects)
    return translate_office(o, -dx, -dy)


def translate_office(o: OfficePolygon, dx, dy) -> OfficePolygon:
    def t(r: Rect) -> Rect:
        return Rect(Point(r.lo.x + dx, r.lo.y + dy), Point(r.hi.x + dx, r.hi.y + dy))
    return OfficePolygon(tuple(t(r) for r in o.rooms),
                         tuple(Corridor(t(c.rect), c.rooms, c.orientation) for c in o.corridors))


def rationalize_office(o: OfficePolygon, seed: int = 0, max_den: int = 7) -> OfficePolygon:
    """Monotone remap v -> 2v + r(v) with a random rational r(v) in [0, 1) per coordinate value.

    Order, incidences and a minimum gap of 1 between distinct values survive.
    """
    rng = np.random.default_rng(seed)

    def table(values):
        out = {}
        for v in sorted(values):
            den = int(rng.integers(1, max_den + 1))
            out[v] = 2 * v + Fraction(int(rng.integers(0, den)), den)
        return out

    rects = o.all_rects()
    tx = table({v for r in rects for v in (r.lo.x, r.hi.x)})
    ty = table({v for r in rects for v in (r.lo.y, r.hi.y)})

    def m(r: Rect) -> Rect:
        return Rect(Point(tx[r.lo.x], ty[r.lo.y]), Point(tx[r.hi.x], ty[r.hi.y]))
    return OfficePolygon(tuple(m(r) for r in o.rooms),
                         tuple(Corridor(m(c.rect), c.rooms, c.orientation) for c in o.corridors))


def gen_random_rational_office(c: GenConfig) -> OfficePolygon:
    return rationalize_office(gen_random_office(c), seed=c.seed)


# --------------------------------------------------------------------------- packings

def gen_packing(c: int, eps, tau, margin=None, room_height=None) -> OfficePolygon:
    """c unit corridors alternating between a bottom and a top room, tau apart.

    Corridor i is centred at (i + i*tau, 2) for even i and (i + i*tau, 4) for odd i.
    The middle room has height 1.  Rooms overhang their outermost corridors by
    ``margin`` (default tau/2) and the outer rooms have height ``room_height``
    (default 1); these are the smallest extents the incidence rules leave.
    """
    eps, tau = Fraction(eps), Fraction(tau)
    if c < 1:
        raise ValueError("need at least one corridor")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if not 0 < tau < eps / 2:
        raise ValueError("tau must lie in (0, eps/2)")
    margin = tau / 2 if margin is None else Fraction(margin)
    room_height = Fraction(1) if room_height is None else Fraction(room_height)
    if margin <= 0 or room_height <= 0:
        raise ValueError("margin and room height must be positive")
    half = Fraction(1, 2)
    cors = []
    for i in range(c):
        cx = i + i * tau
        cy = 2 if i % 2 == 0 else 4
        cors.append((i, Rect(Point(cx - half, cy - half), Point(cx + half, cy + half))))
    even = [r for i, r in cors if i % 2 == 0]
    odd = [r for i, r in cors if i % 2 == 1]
    left = min(r.lo.x for _, r in cors) - margin
    right = max(r.hi.x for _, r in cors) + margin
    middle = Rect(Point(left, Fraction(5, 2)), Point(right, Fraction(7, 2)))
    rooms = [middle]
    bottom = Rect(Point(min(r.lo.x for r in even) - margin, Fraction(3, 2) - room_height),
                  Point(max(r.hi.x for r in even) + margin, Fraction(3, 2)))
    rooms.append(bottom)
    if odd:
        top = Rect(Point(min(r.lo.x for r in odd) - margin, Fraction(9, 2)),
                   Point(max(r.hi.x for r in odd) + margin, Fraction(9, 2) + room_height))
        rooms.append(top)
    corridors = tuple(Corridor(r, (1, 0) if i % 2 == 0 else (0, 2), "vertical") for i, r in cors)
    return OfficePolygon(tuple(rooms), corridors)


# --------------------------------------------------------------------------- ratio family

def ratio_width(k: int) -> int:
    return 2 * k * k + 4 * k + 1


def gen_ratio_family(k: int) -> OfficePolygon:
    """Rooms R_1..R_k of height 1 stacked top to bottom, joined by k aligned unit corridors."""
    if k < 2:
        raise ValueError("the ratio family needs k >= 2")
    gaps = [2] + [1] * (k - 3) + [2] if k >= 3 else [2]
    width = ratio_width(k)
    # build bottom-up: R_k at y = 0
    ys = [0]
    for g in reversed(gaps):
        ys.append(ys[-1] + 1 + g)
    ys = list(reversed(ys))  # ys[i] = bottom of R_{i+1}
    rooms = tuple(Rect.of(0, y, width, y + 1) for y in ys)
    corridors = []
    for i in range(k - 1):
        upper, lower = rooms[i], rooms[i + 1]
        for j in range(1, k + 1):
            x = 1 + (j - 1) * (2 * k + 2)
            corridors.append(Corridor(Rect(Point(Fraction(x), lower.hi.y), Point(Fraction(x + 1), upper.lo.y)),
                                      (i + 1, i), "vertical"))
    return OfficePolygon(rooms, tuple(corridors))


def ratio_strip_x(k: int, j: int) -> int:
    """Left boundary of strip S_j (1-based)."""
    return 1 + (j - 1) * (2 * k + 2)


def ratio_small_guards(k: int) -> list[Point]:
    """One guard per strip, at a vertex the strip S_i shares with room R_i."""
    o = gen_ratio_family(k)
    out = []
    for i in range(1, k + 1):
        room = o.rooms[i - 1]
        x = Fraction(ratio_strip_x(k, i))
        # R_1 only touches strips from below, the others from above
        y = room.lo.y if i == 1 else room.hi.y
        out.append(Point(x, y))
    return out


def ratio_dispersive_guards(k: int) -> list[Point]:
    """Strip guards alternating top-left / bottom-left, plus top-right corners of R_2..R_{k-1}."""
    o = gen_ratio_family(k)
    top = o.rooms[0].lo.y
    bottom = o.rooms[-1].hi.y
    out = []
    for j in range(1, k + 1):
        x = Fraction(ratio_strip_x(k, j))
        out.append(Point(x, top if j % 2 == 1 else bottom))
    for r in o.rooms[1:-1]:
        out.append(r.hi)
    return out


# --------------------------------------------------------------------------- figure instance

# Two long rooms joined by three unit-square corridors one unit apart.  Each
# corridor needs its own guard and two of those are then at most 3 apart.
# Found by search with the exact solver and fixed here.
FIG_DISP3 = {
    "rooms": [(0, 0, 7, 1), (0, 2, 7, 3)],
    "corridors": [
        {"rect": (1, 1, 2, 2), "rooms": (0, 1)},
        {"rect": (3, 1, 4, 2), "rooms": (0, 1)},
        {"rect": (5, 1, 6, 2), "rooms": (0, 1)},
    ],
}


def gen_fig_disp3() -> OfficePolygon:
    rooms = tuple(Rect.of(*r) for r in FIG_DISP3["rooms"])
    corridors = tuple(Corridor(Rect.of(*c["rect"]), tuple(c["rooms"])) for c in FIG_DISP3["corridors"])
    return OfficePolygon(rooms, corridors)


# --------------------------------------------------------------------------- orthogonal polygons

_PINCH = (np.array([[1, 0], [0, 1]], bool), np.array([[0, 1], [1, 0]], bool))


def _pinched(cells, i, j) -> bool:
    nx, ny = cells.shape
    for a in (i - 1, i):
        for b in (j - 1, j):
            if 0 <= a and a + 1 < nx and 0 <= b and b + 1 < ny:
                blk = cells[a:a + 2, b:b + 2]
                if (blk == _PINCH[0]).all() or (blk == _PINCH[1]).all():
                    return True
    return False


def _corner_count(cells) -> int:
    pad = np.pad(cells, 1).astype(np.int8)
    s = pad[:-1, :-1] + pad[1:, :-1] + pad[:-1, 1:] + pad[1:, 1:]
    return int(((s == 1) | (s == 3)).sum())


def gen_random_orthogonal(n_vertices: int, seed: int = 0, holes: bool = True,
                          size: int | None = None, spacing=(1, 3)) -> OrthoPolygon:
    """Grow a polyomino cell by cell until it has about ``n_vertices`` corners.

    Column widths and row heights are random integers in ``spacing``, so the
    result is a general orthogonal polygon rather than a unit polyomino.
    """
    rng = np.random.default_rng(seed)
    size = size or max(6, int(2.2 * np.sqrt(n_vertices)) + 4)
    for _ in range(50):
        cells = np.zeros((size, size), dtype=bool)
        cells[size // 2, size // 2] = True
        frontier = {(size // 2 + di, size // 2 + dj) for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1))}
        count = 4
        stall = 0
        while count < n_vertices and frontier and stall < 50 * size:
            fl = sorted(frontier)
            i, j = fl[int(rng.integers(len(fl)))]
            if not (0 <= i < size and 0 <= j < size) or cells[i, j]:
                frontier.discard((i, j))
                continue
            cells[i, j] = True
            if _pinched(cells, i, j):
                cells[i, j] = False
                stall += 1
                continue
            new = _corner_count(cells)
            if new > n_vertices:
                cells[i, j] = False
                stall += 1
                continue
            count = new
            frontier.discard((i, j))
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                a, b = i + di, j + dj
                if 0 <= a < size and 0 <= b < size and not cells[a, b]:
                    frontier.add((a, b))
        if count != n_vertices:
            continue
        xs = np.concatenate([[0], np.cumsum(rng.integers(spacing[0], spacing[1] + 1, size))])
        ys = np.concatenate([[0], np.cumsum(rng.integers(spacing[0], spacing[1] + 1, size))])
        try:
            p = polygon_from_cells(cells, xs.tolist(), ys.tolist())
        except ValueError:
            continue
        if not holes and p.holes:
            continue
        if validate_ortho(p).ok and p.n == n_vertices:
            return p
    raise RuntimeError(f"could not grow a {n_vertices}-vertex polygon from seed {seed}")


# --------------------------------------------------------------------------- I/O

def _pt(v, where):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ValueError(f"{where}: expected [x, y], got {v!r}")
    try:
        return Point(as_coord(v[0]), as_coord(v[1]))
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{where}: {e}") from None


def _rect(v, where):
    if not isinstance(v, (list, tuple)) or len(v) != 4:
        raise ValueError(f"{where}: expected [x1, y1, x2, y2], got {v!r}")
    try:
        return Rect.of(*v)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ValueError(f"{where}: {e}") from None


def instance_to_json(inst) -> dict:
    poly = inst.polygon if isinstance(inst, OfficePolygon) else inst
    fmt = lambda p: [format_coord(p.x), format_coord(p.y)]  # noqa: E731
    out = {"outer": [fmt(p) for p in poly.outer], "holes": [[fmt(p) for p in h] for h in poly.holes]}
    if isinstance(inst, OfficePolygon):
        rfmt = lambda r: [format_coord(v) for v in (*r.lo, *r.hi)]  # noqa: E731
        out["office"] = {"rooms": [rfmt(r) for r in inst.rooms],
                         "corridors": [_cor_json(c, rfmt) for c in inst.corridors]}
    return out


def _cor_json(c: Corridor, rfmt) -> dict:
    out = {"rect": rfmt(c.rect), "rooms": list(c.rooms)}
    if c.orientation is not None:
        out["orientation"] = c.orientation
    return out


def instance_from_json(data) -> OrthoPolygon | OfficePolygon:
    if not isinstance(data, dict):
        raise ValueError("instance must be a JSON object")
    office = data.get("office")
    if office is not None:
        rooms = tuple(_rect(r, f"office.rooms[{k}]") for k, r in enumerate(office.get("rooms", [])))
        cors = []
        for k, c in enumerate(office.get("corridors", [])):
            rr = c.get("rooms") if isinstance(c, dict) else None
            if not isinstance(rr, list) or len(rr) != 2 or not all(isinstance(t, int) for t in rr):
                raise ValueError(f"office.corridors[{k}].rooms: expected two room indices")
            orient = c.get("orientation")
            if orient not in (None, "vertical", "horizontal"):
                raise ValueError(f"office.corridors[{k}].orientation: expected vertical or horizontal")
            cors.append(Corridor(_rect(c.get("rect"), f"office.corridors[{k}].rect"), tuple(rr), orient))
        inst = OfficePolygon(rooms, tuple(cors))
        validate_office(inst).raise_if_failed("office")
        if "outer" in data:
            given = _poly_from(data)
            if given.outer != inst.polygon.outer or set(given.holes) != set(inst.polygon.holes):
                raise ValueError("outer/holes do not match the office rooms and corridors")
        return inst
    if "outer" not in data:
        raise ValueError("missing field 'outer'")
    p = _poly_from(data)
    validate_ortho(p).raise_if_failed("polygon")
    return p


def _poly_from(data) -> OrthoPolygon:
    outer = tuple(_pt(v, f"outer[{k}]") for k, v in enumerate(data["outer"]))
    holes = tuple(tuple(_pt(v, f"holes[{h}][{k}]") for k, v in enumerate(ring))
                  for h, ring in enumerate(data.get("holes", [])))
    return OrthoPolygon(outer, holes)


def read_instance(path) -> OrthoPolygon | OfficePolygon:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    try:
        return instance_from_json(data)
    except ValueError as e:
        raise ValueError(f"{path}: {e}") from None


def write_instance(path, inst):
    Path(path).write_text(json.dumps(instance_to_json(inst)) + "\n")


def as_polygon(inst) -> OrthoPolygon:
    return inst.polygon if isinstance(inst, OfficePolygon) else inst
