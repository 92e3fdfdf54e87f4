"""Dynamic program for hole-free office-like polygons with independent corridors.

The room graph is a tree.  Orient it towards a root; the branch of a tree edge
(v, w) is the subtree hanging below v together with the corridor to w, and its
gates are the two corridor vertices on the wall of w.  Because corridors are
independent, every shortest path leaving a branch passes through a gate, so a
guard set inside a branch talks to the rest of the polygon only through its two
gate distances.  For each node we keep at most one configuration per placement
of guards on the parent corridor and the corners of the room.

Distances are handled as integers (geodesic distance times the matrix scale).
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Solution
from .geodesic import DistanceMatrix, all_pairs_vertex_dist
from .geom import OfficePolygon, Point, corridor_attachment, validate_office
from .witness import INF, build_cells, realized_dispersion

VERTICAL = ("top", "bottom")


class PreconditionError(ValueError):
    pass


# --- the room tree


@dataclass
class Branch:
    """Branch of the tree edge (u, v): the subtree at u plus the corridor to v."""
    edge: tuple[int, int]
    corridor: int
    side: str  # wall of the parent room v the corridor leaves from
    gates: tuple[Point, Point]  # on the wall of v, left/bottom first
    inner: tuple[Point, Point]  # the corridor's vertices on the wall of u
    rooms: frozenset = frozenset()
    corridors: frozenset = frozenset()

    @property
    def vertical(self) -> bool:
        return self.side in VERTICAL

    @property
    def position(self):
        """Coordinate along the parent wall, for left-to-right (bottom-to-top) order."""
        g = self.gates[0]
        return g.x if self.vertical else g.y


def wall_vertices(o: OfficePolygon, k: int, room: int) -> tuple[Point, Point]:
    """The two vertices of corridor k on the wall of ``room``, left/bottom first."""
    r, c = o.rooms[room], o.corridors[k].rect
    side = corridor_attachment(o, k, room)
    if side in VERTICAL:
        y = r.hi.y if side == "top" else r.lo.y
        return Point(c.lo.x, y), Point(c.hi.x, y)
    x = r.hi.x if side == "right" else r.lo.x
    return Point(x, c.lo.y), Point(x, c.hi.y)


@dataclass
class RoomTree:
    office: OfficePolygon
    root: int
    parent: dict[int, int]
    parent_corridor: dict[int, int]
    children: dict[int, list[int]]
    order: list[int]  # children before parents

    @property
    def nodes(self) -> range:
        return range(len(self.office.rooms))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(v, self.parent[v]) for v in self.order if v != self.root]

    def subtree(self, v: int) -> list[int]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack += self.children[u]
        return out

    def branch(self, v: int) -> Branch:
        """Branch of the edge from v to its parent."""
        o = self.office
        w, k = self.parent[v], self.parent_corridor[v]
        rooms = self.subtree(v)
        cors = frozenset([k] + [self.parent_corridor[u] for u in rooms if u != v])
        return Branch((v, w), k, corridor_attachment(o, k, w), wall_vertices(o, k, w),
                      wall_vertices(o, k, v), frozenset(rooms), cors)


def room_tree(o: OfficePolygon, root: int = 0) -> RoomTree:
    n = len(o.rooms)
    if len(o.corridors) != n - 1:
        raise PreconditionError("DP preconditions violated: the room graph is not a tree (polygon has holes)")
    adj = {i: [] for i in range(n)}
    for k, c in enumerate(o.corridors):
        a, b = c.rooms
        adj[a].append((b, k))
        adj[b].append((a, k))
    parent, pcor, children = {}, {}, {i: [] for i in range(n)}
    seen, order, stack = {root}, [], [root]
    while stack:
        v = stack.pop()
        order.append(v)
        for u, k in adj[v]:
            if u not in seen:
                seen.add(u)
                parent[u], pcor[u] = v, k
                children[v].append(u)
                stack.append(u)
    if len(seen) != n:
        raise PreconditionError("DP preconditions violated: rooms are not connected")
    return RoomTree(o, root, parent, pcor, children, order[::-1])


def check_independent(o: OfficePolygon) -> bool:
    """No vertex of one corridor sees into the interior of another corridor."""
    if len(o.corridors) < 2:
        return True
    poly = o.polygon
    cells = build_cells(poly)
    inside = [cells.cells_in(c.rect) for c in o.corridors]
    for k1, c1 in enumerate(o.corridors):
        own = [poly.vertex_index[p] for p in c1.rect.corners]
        for k2 in range(len(o.corridors)):
            if k2 != k1 and inside[k2] and cells.cover[own][:, inside[k2]].any():
                return False
    return True


# --- configurations


@dataclass(frozen=True)
class Configuration:
    """A guard set for a branch; ``dist_to_gate`` is scaled by the distance matrix scale."""
    guards: tuple[int, ...]
    gates: tuple[int, int]
    dist_to_gate: tuple[int, int]
    covers_parent_room: bool


@dataclass(frozen=True)
class PlacementX:
    """Guards on the parent corridor and the corners of the room, with the gate
    whose distance to the rest of the branch is to be maximised (None when two
    guards sit on diagonal corridor vertices)."""
    guards: tuple[int, ...]
    covers_room: bool
    blue: int | None


class _Ctx:
    """Distances for one decision bound; ``L`` is the scaled bound, rounded up."""

    def __init__(self, dists: DistanceMatrix, ell):
        self.D = dists.scaled.tolist()
        self.scale = dists.scale
        self.L = math.ceil(Fraction(ell) * dists.scale)

    def to(self, c: Configuration, x: int) -> int:
        g0, g1 = c.gates
        return min(c.dist_to_gate[0] + self.D[g0][x], c.dist_to_gate[1] + self.D[g1][x])

    def between(self, a: Configuration, b: Configuration) -> int:
        return min(a.dist_to_gate[s] + self.D[a.gates[s]][b.gates[t]] + b.dist_to_gate[t]
                   for s in (0, 1) for t in (0, 1))


def placements(o: OfficePolygon, b: Branch, index) -> list[PlacementX]:
    """Sensible guard placements on the corridor of ``b`` and the corners of its top room."""
    s_lo, s_hi = (index[p] for p in b.inner)
    g_lo, g_hi = (index[p] for p in b.gates)
    corners = [index[p] for p in o.rooms[b.edge[0]].corners]
    out = [PlacementX((s_lo,), True, g_hi), PlacementX((s_hi,), True, g_lo),
           PlacementX((s_lo, g_lo), True, g_hi), PlacementX((s_hi, g_hi), True, g_lo),
           PlacementX((s_lo, g_hi), True, None), PlacementX((s_hi, g_lo), True, None)]
    for g, blue in ((g_lo, g_hi), (g_hi, g_lo)):
        out.append(PlacementX((g,), False, blue))
        out += [PlacementX((g, c), True, blue) for c in corners]
    return out


def _pareto(cs: list[Configuration]) -> list[Configuration]:
    """Drop configurations no farther from either gate than another one; order
    the rest from smallest (farthest from the right/top gate) to largest."""
    cs = sorted(cs, key=lambda c: (-c.dist_to_gate[1], -c.dist_to_gate[0]))
    out, best0 = [], None
    for c in cs:
        if best0 is None or c.dist_to_gate[0] > best0:
            out.append(c)
            best0 = c.dist_to_gate[0]
    return out


def greedy_select(branches: list[Branch], configs: dict, ctx: _Ctx):
    """Pick, left to right (bottom to top), the smallest configuration at
    distance >= L from everything picked before; None when some branch has none.

    Earlier picks are only seen through the far gate of the last branch on
    each side, which all shortest paths to the right pass through.
    """
    chosen = {}
    refs: dict[str, tuple[int, int]] = {}  # side -> (gate vertex, distance to the picks so far)
    for b in sorted(branches, key=lambda b: b.position):
        pick = None
        for c in _pareto(configs[b.edge]):
            if all(ctx.to(c, g) + m >= ctx.L for g, m in refs.values()):
                pick = c
                break
        if pick is None:
            return None
        chosen[b.edge] = pick
        far = pick.gates[1]
        m = pick.dist_to_gate[1]
        for g, mg in refs.values():
            m = min(m, mg + ctx.D[g][far])
        refs[b.side] = (far, m)
    return chosen


def independent_set(vert: list[Branch], horiz: list[Branch], configs: dict, ctx: _Ctx, corner: int):
    """One configuration per branch, pairwise at distance >= L, or None.

    ``corner`` is the bottom-left corner of the room the branches hang from.
    Each probe p keeps vertical configurations at distance >= p from the
    corner and horizontal ones at distance >= L - p, then alternates greedy
    selection with discarding configurations that cannot be in any solution.
    """
    if vert:
        probes = sorted({ctx.to(c, corner) for b in vert for c in configs[b.edge]})
    else:
        probes = [ctx.L]
    for p in probes:
        cv = {b.edge: _pareto([c for c in configs[b.edge] if ctx.to(c, corner) >= p]) for b in vert}
        ch = {b.edge: _pareto([c for c in configs[b.edge] if ctx.to(c, corner) >= ctx.L - p]) for b in horiz}
        while True:
            sv = greedy_select(vert, cv, ctx)
            sh = greedy_select(horiz, ch, ctx) if sv is not None else None
            if sv is None or sh is None:
                break
            clash = next(((bi, bj) for bi in vert for bj in horiz
                          if ctx.between(sv[bi.edge], sh[bj.edge]) < ctx.L), None)
            if clash is None:
                return {**sv, **sh}
            bi, bj = clash
            if bi.side == "bottom":
                if bj.side == "left":
                    raise AssertionError("bottom and left picks cannot clash after the corner filter")
                ch[bj.edge].remove(sh[bj.edge])
            elif bj.side == "right":
                break
            else:
                cv[bi.edge].remove(sv[bi.edge])
    return None


def _combine(vert, horiz, configs, ctx, corner, blue):
    """Best selection for the largest distance to ``blue`` (binary search), or None."""
    allb = vert + horiz
    if not allb:
        return {}, math.inf
    if not all(configs[b.edge] for b in allb):
        return None
    if blue is None:
        sel = independent_set(vert, horiz, configs, ctx, corner)
        return (sel, 0) if sel is not None else None
    values = sorted({ctx.to(c, blue) for b in allb for c in configs[b.edge]})

    def attempt(t):
        kept = {b.edge: [c for c in configs[b.edge] if ctx.to(c, blue) >= t] for b in allb}
        return independent_set(vert, horiz, kept, ctx, corner)

    best = attempt(values[0])
    if best is None:
        return None
    lo, hi = 0, len(values)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        sel = attempt(values[mid])
        if sel is None:
            hi = mid
        else:
            best, lo = sel, mid
    return best, min(ctx.to(c, blue) for c in best.values())


def build_configuration(node: int, X: PlacementX, child_branches: list[Branch], configs: dict,
                        ctx: _Ctx, corner: int, gates: tuple[int, int] | None):
    """Guards of X plus one configuration per child branch, or None.

    Returns the chosen child configurations (edge -> Configuration) together with
    the new configuration for the branch above ``node`` (None at the root).
    """
    D, L = ctx.D, ctx.L
    if any(D[a][b] < L for i, a in enumerate(X.guards) for b in X.guards[i + 1:]):
        return None
    ok = {b.edge: [c for c in configs[b.edge] if all(ctx.to(c, x) >= L for x in X.guards)]
          for b in child_branches}
    vert = [b for b in child_branches if b.vertical]
    horiz = [b for b in child_branches if not b.vertical]
    options = [None]
    if not X.covers_room:
        options = [(b.edge, c) for b in child_branches for c in ok[b.edge] if c.covers_parent_room]
    best = None
    for opt in options:
        cs = ok
        if opt is not None:
            cs = dict(ok)
            cs[opt[0]] = [opt[1]]
        res = _combine(vert, horiz, cs, ctx, corner, X.blue)
        if res is not None and (best is None or res[1] > best[1]):
            best = res
    if best is None:
        return None
    sel = best[0]
    if gates is None:
        return sel, None
    guards = tuple(sorted(set(X.guards).union(*(c.guards for c in sel.values()))))
    d = tuple(min([D[x][g] for x in X.guards] + [ctx.to(c, g) for c in sel.values()]) for g in gates)
    return sel, Configuration(guards, gates, d, any(x in gates for x in X.guards))


# --- the decision procedure and the search


@dataclass
class DPInstance:
    """Everything about an office that does not depend on the distance bound."""
    office: OfficePolygon
    tree: RoomTree
    dists: DistanceMatrix
    branches: dict[int, Branch] = field(default_factory=dict)  # by child node
    stats: dict = field(default_factory=dict)

    @property
    def index(self):
        return self.office.polygon.vertex_index

    def child_branches(self, v: int) -> list[Branch]:
        return [self.branches[u] for u in self.tree.children[v]]


def prepare(o: OfficePolygon, root: int = 0) -> DPInstance:
    validate_office(o).raise_if_failed("office")
    tree = room_tree(o, root)
    if o.polygon.holes:
        raise PreconditionError("DP preconditions violated: polygon has holes")
    if not check_independent(o):
        raise PreconditionError("DP preconditions violated: corridors are not independent")
    inst = DPInstance(o, tree, all_pairs_vertex_dist(o.polygon))
    for v in tree.order:
        if v != tree.root:
            inst.branches[v] = tree.branch(v)
    return inst


def configuration_sets(inst: DPInstance, ell):
    """Configuration sets for every branch, children first; None once one is empty."""
    ctx = _Ctx(inst.dists, ell)
    idx = inst.index
    o = inst.office
    configs: dict[tuple[int, int], list[Configuration]] = {}
    for v in inst.tree.order:
        if v == inst.tree.root:
            continue
        b = inst.branches[v]
        gates = (idx[b.gates[0]], idx[b.gates[1]])
        corner = idx[o.rooms[v].lo]
        kids = inst.child_branches(v)
        found = {}
        for X in placements(o, b, idx):
            res = build_configuration(v, X, kids, configs, ctx, corner, gates)
            if res is not None:
                c = res[1]
                found.setdefault((c.dist_to_gate, c.covers_parent_room), c)
        if not found:
            return None, ctx
        configs[b.edge] = list(found.values())
    return configs, ctx


def decide_dp(o: OfficePolygon, ell, inst: DPInstance | None = None) -> Solution | None:
    """A guard set with dispersion >= ell, or None when there is none."""
    inst = inst or prepare(o)
    o = inst.office
    idx = inst.index
    root = inst.tree.root
    if ell == INF:
        if len(o.rooms) == 1:
            return _solution(inst, [idx[o.rooms[0].lo]])
        return None
    if ell <= 0:
        raise ValueError("the distance bound must be positive")
    configs, ctx = configuration_sets(inst, ell)
    if configs is None:
        return None
    corners = [idx[p] for p in o.rooms[root].corners]
    kids = inst.child_branches(root)
    roots = [PlacementX((), False, None)] + [PlacementX((c,), True, None) for c in corners]
    if not kids:
        roots = roots[1:]
    for X in roots:
        res = build_configuration(root, X, kids, configs, ctx, idx[o.rooms[root].lo], None)
        if res is None:
            continue
        guards = set(X.guards).union(*(c.guards for c in res[0].values()))
        sol = _solution(inst, guards)
        if sol.dispersion != INF and sol.dispersion < ell:
            raise AssertionError("assembled guard set violates the distance bound")
        return sol
    return None


def _solution(inst: DPInstance, guards) -> Solution:
    idx = sorted(guards)
    return Solution([inst.office.polygon.vertices[g] for g in idx], realized_dispersion(inst.dists, idx))


def max_dispersion_dp(o: OfficePolygon, inst: DPInstance | None = None) -> Solution:
    inst = inst or prepare(o)
    if len(inst.office.rooms) == 1:
        sol = decide_dp(o, INF, inst)
        sol.stats["probes"] = 0
        return sol
    cands = inst.dists.candidates()
    best, lo, hi, probes = None, -1, len(cands), 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probes += 1
        sol = decide_dp(o, cands[mid], inst)
        if sol is None:
            hi = mid
            continue
        best = sol
        lo = max(mid, _position(cands, sol.dispersion))
    if best is None:
        raise AssertionError("no feasible guard set at the smallest distance")
    best.stats["probes"] = probes
    return best


def _position(cands, d) -> int:
    return bisect.bisect_left(cands, d)
