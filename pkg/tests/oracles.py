"""Slow, independent reference implementations used to check the library."""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

import numpy as np

from dispersive_agp.geom import Point, Rect
from dispersive_agp.visibility import covers_rect


def _inside_even_odd(rings, x, y) -> bool:
    # ray to +x; (x, y) must avoid vertex coordinates
    hits = 0
    for ring in rings:
        for a, b in zip(ring, ring[1:] + ring[:1]):
            if a.x == b.x and min(a.y, b.y) < y < max(a.y, b.y) and a.x > x:
                hits += 1
    return hits % 2 == 1


def lattice_bfs(poly, a: Point) -> dict:
    """Geodesic L1 distances from lattice point a of an integer polygon to every
    reachable lattice point, by breadth-first search on the unit lattice."""
    rings = [list(r) for r in poly.rings]
    xs = [int(p.x) for p in poly.vertices]
    ys = [int(p.y) for p in poly.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    cell = {}
    for i in range(x0, x1):
        for j in range(y0, y1):
            cell[i, j] = _inside_even_odd(rings, Fraction(2 * i + 1, 2), Fraction(2 * j + 1, 2))

    def c(i, j):
        return cell.get((i, j), False)

    def step_ok(p, q):
        (i, j), (k, l) = p, q
        if j == l:  # unit step along the line y = j
            m = min(i, k)
            return c(m, j) or c(m, j - 1)
        m = min(j, l)
        return c(i, m) or c(i - 1, m)

    start = (int(a.x), int(a.y))
    seen = {start: 0}
    dq = deque([start])
    while dq:
        p = dq.popleft()
        i, j = p
        for q in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if x0 <= q[0] <= x1 and y0 <= q[1] <= y1 and q not in seen and step_ok(p, q):
                seen[q] = seen[p] + 1
                dq.append(q)
    return seen


def lattice_bfs_dist(poly, a: Point, b: Point) -> int:
    return lattice_bfs(poly, a)[int(b.x), int(b.y)]


def cell_cover_by_sampling(poly, cells) -> np.ndarray:
    """cover[g, c] from four-corner visibility of each cell, one covers_rect call per pair."""
    cover = np.zeros((poly.n, len(cells)), bool)
    for c in range(len(cells)):
        r = cells.rect(c)
        for g, v in enumerate(poly.vertices):
            cover[g, c] = covers_rect(poly, v, r)
    return cover


def brute_max_dispersion(poly, cover: np.ndarray, dists):
    """Exhaustive search over vertex subsets; returns the optimum ('inf' for one guard)."""
    n = poly.n
    D = dists.scaled
    full = cover.shape[1]
    if cover.any(axis=1).size and cover.all(axis=1).any():
        return "inf"
    best = None
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) < 2:
            continue
        if not cover[idx].any(axis=0).all() and full:
            continue
        d = min(int(D[a, b]) for a, b in itertools.combinations(idx, 2))
        if best is None or d > best:
            best = d
    return Fraction(best, dists.scale)


def truth_table(num_vars, clauses):
    """(satisfiable, number of models) by evaluating every assignment at once."""
    rows = np.arange(1 << num_vars, dtype=np.int64)
    bits = [(rows >> v & 1).astype(bool) for v in range(num_vars)]
    ok = np.ones(rows.size, bool)
    for c in clauses:
        sat = np.zeros(rows.size, bool)
        for l in c:
            sat |= bits[abs(l) - 1] if l > 0 else ~bits[abs(l) - 1]
        ok &= sat
    n = int(ok.sum())
    return n > 0, n


def pigeonhole(p: int, h: int):
    """p pigeons into h holes; variable (i, j) -> i*h + j + 1."""
    v = lambda i, j: i * h + j + 1  # noqa: E731
    cls = [[v(i, j) for j in range(h)] for i in range(p)]
    for j in range(h):
        for a, b in itertools.combinations(range(p), 2):
            cls.append([-v(a, j), -v(b, j)])
    return p * h, cls


def rect_union_vertex_count(rects) -> int:
    """Corner count of the union of closed rectangles on their coordinate grid."""
    xs = sorted({v for r in rects for v in (r.lo.x, r.hi.x)})
    ys = sorted({v for r in rects for v in (r.lo.y, r.hi.y)})
    occ = np.zeros((len(xs) + 1, len(ys) + 1), int)
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            cx, cy = (xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2
            occ[i + 1, j + 1] = any(r.lo.x < cx < r.hi.x and r.lo.y < cy < r.hi.y for r in rects)
    s = occ[:-1, :-1] + occ[1:, :-1] + occ[:-1, 1:] + occ[1:, 1:]
    diag = (occ[:-1, :-1] == occ[1:, 1:]) & (occ[1:, :-1] == occ[:-1, 1:]) & (occ[:-1, :-1] != occ[1:, :-1])
    return int(((s == 1) | (s == 3)).sum() + 2 * diag.sum())


def euler_holes(rects) -> int:
    """Holes of a connected union of rectangles from the cell complex: 1 - V + E - F."""
    xs = sorted({v for r in rects for v in (r.lo.x, r.hi.x)})
    ys = sorted({v for r in rects for v in (r.lo.y, r.hi.y)})
    nx, ny = len(xs) - 1, len(ys) - 1
    occ = np.zeros((nx, ny), bool)
    for i in range(nx):
        for j in range(ny):
            cx, cy = (xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2
            occ[i, j] = any(r.lo.x < cx < r.hi.x and r.lo.y < cy < r.hi.y for r in rects)
    F = int(occ.sum())
    verts, edges = set(), set()
    for i, j in zip(*np.nonzero(occ)):
        for dx, dy in ((0, 0), (1, 0), (0, 1), (1, 1)):
            verts.add((i + dx, j + dy))
        edges |= {("h", i, j), ("h", i, j + 1), ("v", i, j), ("v", i + 1, j)}
    # connected, so holes = 1 - chi
    return 1 - (len(verts) - len(edges) + F)


def rect_of(*v) -> Rect:
    return Rect.of(*v)
