"""A small CDCL SAT solver over integer literals.

Variables are positive ints 1..n, literals signed ints. The clause
database is incremental: clauses only ever get added, and each solve()
call takes a fresh set of assumption literals, which makes the solver
usable for many overlapping satisfiability queries against one database
(selector-variable style). Learned clauses are derived by resolution
from the database alone, so they stay valid across calls regardless of
the assumptions in force when they were learned.

Search is conflict-driven: two-watched-literal propagation, first-UIP
conflict analysis with backjumping, activity-ordered branching with
phase saving. Assumptions are asserted as the first decision levels; a
conflict that cannot backjump above them means unsatisfiable under the
assumptions. Every branch decision counts against a per-call budget so
adversarial inputs fail deterministically with ResourceLimit instead of
hanging.
"""

from __future__ import annotations

from .errors import ResourceLimit

DEFAULT_DECISION_BUDGET = 10_000_000

_VAR_DECAY = 1.0 / 0.95
_RESCALE_LIMIT = 1e100


class Solver:
    def __init__(self) -> None:
        self.nvars = 0
        self._values: list[int] = [0]   # per var: 0 free, 1 true, -1 false
        self._level: list[int] = [0]
        self._reason: list[int] = [-1]  # clause index that implied the var
        self._phase: list[int] = [1]
        self._activity: list[float] = [0.0]
        self._act_inc = 1.0
        self._clauses: list[list[int]] = []
        self._watches: dict[int, list[int]] = {}
        self._root_units: list[int] = []
        self._unsat_db = False
        self._trail: list[int] = []
        self._trail_lim: list[int] = []
        self._qhead = 0

    def new_var(self) -> int:
        self.nvars += 1
        self._values.append(0)
        self._level.append(0)
        self._reason.append(-1)
        self._phase.append(1)
        self._activity.append(0.0)
        return self.nvars

    def add_clause(self, lits: list[int]) -> None:
        seen: set[int] = set()
        out: list[int] = []
        for lit in lits:
            if -lit in seen:
                return  # tautology
            if lit not in seen:
                seen.add(lit)
                out.append(lit)
        if not out:
            self._unsat_db = True
            return
        if len(out) == 1:
            self._root_units.append(out[0])
            return
        self._attach(out)

    def _attach(self, lits: list[int]) -> int:
        ci = len(self._clauses)
        self._clauses.append(lits)
        self._watches.setdefault(lits[0], []).append(ci)
        self._watches.setdefault(lits[1], []).append(ci)
        return ci

    # -- assignment handling ---------------------------------------------------

    def _value(self, lit: int) -> int:
        return self._values[lit] if lit > 0 else -self._values[-lit]

    def _enqueue(self, lit: int, reason: int) -> bool:
        v = self._value(lit)
        if v == 1:
            return True
        if v == -1:
            return False
        var = abs(lit)
        self._values[var] = 1 if lit > 0 else -1
        self._level[var] = len(self._trail_lim)
        self._reason[var] = reason
        self._phase[var] = 1 if lit > 0 else -1
        self._trail.append(lit)
        return True

    def _cancel_until(self, level: int) -> None:
        if len(self._trail_lim) <= level:
            return
        mark = self._trail_lim[level]
        for lit in reversed(self._trail[mark:]):
            self._values[abs(lit)] = 0
        del self._trail[mark:]
        del self._trail_lim[level:]
        self._qhead = mark

    def _propagate(self) -> int:
        """Exhaust unit propagation; returns a conflicting clause index or -1."""
        values = self._values
        watches = self._watches
        clauses = self._clauses
        while self._qhead < len(self._trail):
            p = self._trail[self._qhead]
            self._qhead += 1
            false_lit = -p
            ws = watches.get(false_lit)
            if not ws:
                continue
            keep: list[int] = []
            n = len(ws)
            for idx in range(n):
                ci = ws[idx]
                clause = clauses[ci]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                fv = values[first] if first > 0 else -values[-first]
                if fv == 1:
                    keep.append(ci)
                    continue
                moved = False
                for k in range(2, len(clause)):
                    lk = clause[k]
                    kv = values[lk] if lk > 0 else -values[-lk]
                    if kv != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        watches.setdefault(lk, []).append(ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if fv == -1:
                    keep.extend(ws[idx + 1:])
                    watches[false_lit] = keep
                    return ci
                self._enqueue(first, ci)
            watches[false_lit] = keep
        return -1

    # -- conflict analysis ---------------------------------------------------

    def _bump(self, var: int) -> None:
        self._activity[var] += self._act_inc
        if self._activity[var] > _RESCALE_LIMIT:
            for i in range(1, self.nvars + 1):
                self._activity[i] *= 1e-100
            self._act_inc *= 1e-100

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        """First-UIP learned clause (asserting literal first) and backjump level."""
        current = len(self._trail_lim)
        seen = bytearray(self.nvars + 1)
        learnt: list[int] = [0]
        counter = 0
        p = 0
        index = len(self._trail) - 1
        clause = self._clauses[confl]
        while True:
            for q in clause:
                if q == p:
                    continue
                var = abs(q)
                if not seen[var] and self._level[var] > 0:
                    seen[var] = 1
                    self._bump(var)
                    if self._level[var] == current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self._trail[index])]:
                index -= 1
            p = self._trail[index]
            index -= 1
            var = abs(p)
            seen[var] = 0
            counter -= 1
            if counter == 0:
                break
            clause = self._clauses[self._reason[var]]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        # move a highest-level literal into the second watch position
        max_i = max(range(1, len(learnt)), key=lambda i: self._level[abs(learnt[i])])
        learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
        return learnt, self._level[abs(learnt[1])]

    # -- main search -----------------------------------------------------------

    def solve(self, assumptions: tuple[int, ...] = (), budget: int = DEFAULT_DECISION_BUDGET) -> bool:
        """True iff the clause database plus assumption literals is satisfiable."""
        if self._unsat_db:
            return False
        try:
            for u in self._root_units:
                if not self._enqueue(u, -1):
                    return False
            if self._propagate() != -1:
                return False
            for a in assumptions:
                v = self._value(a)
                if v == 1:
                    continue
                if v == -1:
                    return False
                self._trail_lim.append(len(self._trail))
                self._enqueue(a, -1)
                if self._propagate() != -1:
                    return False
            base_level = len(self._trail_lim)

            decisions = 0
            values = self._values
            activity = self._activity
            while True:
                confl = self._propagate()
                if confl != -1:
                    if len(self._trail_lim) == base_level:
                        return False
                    learnt, bt = self._analyze(confl)
                    self._cancel_until(max(bt, base_level))
                    if len(learnt) == 1:
                        # implied by the database alone: keep it for later calls
                        self._root_units.append(learnt[0])
                        if not self._enqueue(learnt[0], -1):
                            return False
                    else:
                        ci = self._attach(learnt)
                        self._enqueue(learnt[0], ci)
                    self._act_inc *= _VAR_DECAY
                    continue
                branch = 0
                best_act = -1.0
                for v in range(1, self.nvars + 1):
                    if values[v] == 0 and activity[v] > best_act:
                        best_act = activity[v]
                        branch = v
                if branch == 0:
                    return True
                decisions += 1
                if decisions > budget:
                    raise ResourceLimit(f"decision budget {budget} exceeded")
                self._trail_lim.append(len(self._trail))
                self._enqueue(branch * self._phase[branch], -1)
        finally:
            self._cancel_until(0)
            for lit in reversed(self._trail):
                self._values[abs(lit)] = 0
            self._trail.clear()
            self._qhead = 0
