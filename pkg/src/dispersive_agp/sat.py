"""A compact CDCL SAT solver.

Two watched literals, first-UIP learning with clause minimisation, VSIDS
branching, phase saving and Luby restarts.  Literals are nonzero ints in the
DIMACS convention.  The solver is deterministic: equal inputs give equal models.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable


@dataclass
class Cnf:
    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)

    def add(self, clause: Iterable[int]):
        clause = list(clause)
        for lit in clause:
            if lit == 0:
                raise ValueError("literal 0 is not a variable")
            self.num_vars = max(self.num_vars, abs(lit))
        self.clauses.append(clause)

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def copy(self) -> "Cnf":
        return Cnf(self.num_vars, [list(c) for c in self.clauses])

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "Cnf":
        f = cls()
        declared = 0
        cur: list[int] = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line[0] in "c%":
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ValueError(f"bad problem line: {line!r}")
                declared = int(parts[2])
                continue
            for tok in line.split():
                v = int(tok)
                if v == 0:
                    f.clauses.append(cur)
                    cur = []
                else:
                    cur.append(v)
                    f.num_vars = max(f.num_vars, abs(v))
        if cur:
            f.clauses.append(cur)
        f.num_vars = max(f.num_vars, declared)
        return f


class Model(dict):
    """Variable -> bool; ``true_vars`` lists the positive ones."""

    @property
    def true_vars(self) -> list[int]:
        return sorted(v for v, b in self.items() if b)

    def satisfies(self, f: Cnf) -> bool:
        return all(any(self.get(abs(l), False) == (l > 0) for l in c) for c in f.clauses)


def _luby(i: int) -> int:
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class Solver:
    def __init__(self, f: Cnf, restart_base: int = 64, phase: bool = False):
        self.n = f.num_vars
        n = self.n
        self.value = [0] * (n + 1)  # 1 true, -1 false, 0 unassigned
        self.level = [0] * (n + 1)
        self.reason: list[list[int] | None] = [None] * (n + 1)
        self.phase = [1 if phase else -1] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.inc = 1.0
        self.watches: dict[int, list[list[int]]] = {}
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.heap = [(0.0, v) for v in range(1, n + 1)]
        heapq.heapify(self.heap)
        self.restart_base = restart_base
        self.conflicts = 0
        self.ok = True
        for c in f.clauses:
            if not self.add_clause(c):
                self.ok = False
                break

    # --- clause database

    def lit_value(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def add_clause(self, clause) -> bool:
        """Add a clause at level 0; False when the formula became UNSAT."""
        if self.trail_lim:
            self.backtrack(0)
        c = []
        for lit in dict.fromkeys(clause):
            if -lit in c:
                return True  # tautology
            val = self.lit_value(lit)
            if val > 0:
                return True
            if val == 0:
                c.append(lit)
        if not c:
            return False
        if len(c) == 1:
            self.assign(c[0], None)
            return self.propagate() is None
        self.watches.setdefault(c[0], []).append(c)
        self.watches.setdefault(c[1], []).append(c)
        return True

    def assign(self, lit: int, reason):
        v = abs(lit)
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def propagate(self):
        value = self.value
        watches = self.watches
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            false_lit = -lit
            ws = watches.get(false_lit)
            if not ws:
                continue
            keep = []
            i = 0
            conflict = None
            while i < len(ws):
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = value[abs(first)]
                if (fv if first > 0 else -fv) > 0:
                    keep.append(c)
                    continue
                for k in range(2, len(c)):
                    l = c[k]
                    lv = value[abs(l)]
                    if (lv if l > 0 else -lv) >= 0:
                        c[1], c[k] = l, c[1]
                        watches.setdefault(l, []).append(c)
                        break
                else:
                    keep.append(c)
                    if (fv if first > 0 else -fv) < 0:
                        conflict = c
                        keep.extend(ws[i:])
                        break
                    self.assign(first, c)
            watches[false_lit] = keep
            if conflict is not None:
                return conflict
        return None

    # --- search

    def bump(self, v: int):
        self.activity[v] += self.inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.n + 1) if self.value[u] == 0]
            heapq.heapify(self.heap)
            return
        if self.value[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def analyze(self, conflict):
        seen = set()
        learnt = [0]
        counter = 0
        lit = None
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        clause = conflict
        while True:
            for q in clause:
                if lit is not None and q == lit:
                    continue
                v = abs(q)
                if v not in seen and self.level[v] > 0:
                    seen.add(v)
                    self.bump(v)
                    if self.level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            clause = self.reason[abs(lit)]
        learnt[0] = -lit
        learnt = self._minimize(learnt, seen)
        if len(learnt) == 1:
            back = 0
        else:
            k = max(range(1, len(learnt)), key=lambda t: self.level[abs(learnt[t])])
            learnt[1], learnt[k] = learnt[k], learnt[1]
            back = self.level[abs(learnt[1])]
        self.inc /= 0.95
        return learnt, back

    def _minimize(self, learnt, seen):
        # drop literals implied by the rest of the clause (local minimisation)
        out = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[abs(q)]
            if r is None or any(abs(t) not in seen and self.level[abs(t)] > 0 for t in r if abs(t) != abs(q)):
                out.append(q)
        return out

    def backtrack(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        start = self.trail_lim[lvl]
        for lit in self.trail[start:]:
            v = abs(lit)
            self.phase[v] = self.value[v]
            self.value[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def pick(self) -> int:
        while self.heap:
            _, v = heapq.heappop(self.heap)
            if self.value[v] == 0:
                return v if self.phase[v] > 0 else -v
        return 0

    def solve(self) -> Model | None:
        if not self.ok:
            return None
        if self.propagate() is not None:
            self.ok = False
            return None
        restart = 1
        budget = self.restart_base * _luby(restart)
        while True:
            conflict = self.propagate()
            if conflict is not None:
                self.conflicts += 1
                if not self.trail_lim:
                    self.ok = False
                    return None
                learnt, back = self.analyze(conflict)
                self.backtrack(back)
                if len(learnt) == 1:
                    self.assign(learnt[0], None)
                else:
                    self.watches.setdefault(learnt[0], []).append(learnt)
                    self.watches.setdefault(learnt[1], []).append(learnt)
                    self.assign(learnt[0], learnt)
                budget -= 1
                if budget <= 0:
                    restart += 1
                    budget = self.restart_base * _luby(restart)
                    self.backtrack(0)
                continue
            lit = self.pick()
            if lit == 0:
                return Model((v, self.value[v] > 0) for v in range(1, self.n + 1))
            self.trail_lim.append(len(self.trail))
            self.assign(lit, None)


def solve(f: Cnf, phase: bool = False) -> Model | None:
    """A satisfying model, or None when f is unsatisfiable.

    ``phase`` is the initial polarity tried for every variable.
    """
    if any(len(c) == 0 for c in f.clauses):
        return None
    m = Solver(f, phase=phase).solve()
    if m is not None and not m.satisfies(f):
        raise AssertionError("solver returned a non-model")
    return m


def count_models(f: Cnf, projection: Iterable[int], cap: int = 1000) -> int:
    """Distinct satisfying assignments restricted to ``projection``, stopping at ``cap``."""
    proj = sorted(set(projection))
    return len(enumerate_models(f, proj, cap))


def enumerate_models(f: Cnf, projection: Iterable[int], cap: int = 1000) -> list[frozenset[int]]:
    """Projected models as sets of true projection variables, via blocking clauses."""
    proj = sorted(set(projection))
    if any(len(c) == 0 for c in f.clauses):
        return []
    s = Solver(f)
    found = []
    while len(found) < cap:
        m = s.solve()
        if m is None:
            break
        if not m.satisfies(f):
            raise AssertionError("solver returned a non-model")
        found.append(frozenset(v for v in proj if m[v]))
        block = [-v if m[v] else v for v in proj]
        if not block or not s.add_clause(block):
            break
    return found
