"""Consistency and entailment checking for propositional sentence sets.

Formulas are clausified once via a structure-preserving (auxiliary
variable) CNF transformation and guarded by per-sentence selector
variables, so checking many overlapping sentence subsets against one
growing database amounts to SAT calls under different assumption sets.
Results are memoized per assumption set; that is sound because the
database only ever grows with guarded clauses over fresh variables.

A Reasoner instance is single-session state. Instances are cheap to
create and share nothing, so independent checks may run in parallel on
separate instances.
"""

from __future__ import annotations

from collections.abc import Iterable

from .formula import And, Atom, Const, Formula, Iff, Implies, Not, Or
from .sat import DEFAULT_DECISION_BUDGET, Solver


class Reasoner:
    def __init__(self, decision_budget: int = DEFAULT_DECISION_BUDGET):
        self.decision_budget = decision_budget
        self._solver = Solver()
        self._atom_var: dict[str, int] = {}
        self._node_lit: dict[Formula, int] = {}
        self._selectors: dict[Formula, int] = {}
        self._cache: dict[frozenset[int], bool] = {}
        self._true_var = self._solver.new_var()
        self._solver.add_clause([self._true_var])

    # -- clausification ----------------------------------------------------

    def _atom_lit(self, name: str) -> int:
        var = self._atom_var.get(name)
        if var is None:
            var = self._solver.new_var()
            self._atom_var[name] = var
        return var

    def _encode(self, f: Formula) -> int:
        """Literal equivalent to f (definitions added as clauses)."""
        if isinstance(f, Atom):
            return self._atom_lit(f.name)
        if isinstance(f, Const):
            return self._true_var if f.value else -self._true_var
        if isinstance(f, Not):
            return -self._encode(f.child)
        cached = self._node_lit.get(f)
        if cached is not None:
            return cached
        add = self._solver.add_clause
        a = self._solver.new_var()
        if isinstance(f, And):
            kids = [self._encode(c) for c in f.children]
            for k in kids:
                add([-a, k])
            add([a] + [-k for k in kids])
        elif isinstance(f, Or):
            kids = [self._encode(c) for c in f.children]
            add([-a] + kids)
            for k in kids:
                add([a, -k])
        elif isinstance(f, Implies):
            l, r = self._encode(f.lhs), self._encode(f.rhs)
            add([-a, -l, r])
            add([a, l])
            add([a, -r])
        elif isinstance(f, Iff):
            l, r = self._encode(f.lhs), self._encode(f.rhs)
            add([-a, -l, r])
            add([-a, l, -r])
            add([a, l, r])
            add([a, -l, -r])
        else:
            raise TypeError(f"not a Formula: {f!r}")
        self._node_lit[f] = a
        return a

    def _is_literal(self, f: Formula) -> bool:
        return isinstance(f, (Atom, Const)) or (isinstance(f, Not) and self._is_literal(f.child))

    def _guard(self, s: int, f: Formula) -> None:
        """Add clauses for (selector s → f), avoiding aux vars where cheap."""
        add = self._solver.add_clause
        if isinstance(f, And):
            for c in f.children:
                self._guard(s, c)
        elif isinstance(f, Or) and all(self._is_literal(c) for c in f.children):
            add([-s] + [self._encode(c) for c in f.children])
        elif isinstance(f, Implies) and self._is_literal(f.lhs) and self._is_literal(f.rhs):
            add([-s, -self._encode(f.lhs), self._encode(f.rhs)])
        else:
            add([-s, self._encode(f)])

    def selector_for(self, f: Formula) -> int:
        """Selector variable asserting f; registered once per formula."""
        s = self._selectors.get(f)
        if s is None:
            s = self._solver.new_var()
            self._selectors[f] = s
            self._guard(s, f)
        return s

    # -- queries -----------------------------------------------------------

    def check_selected(self, selectors: Iterable[int]) -> bool:
        """Satisfiability of the database with the given selectors asserted."""
        key = frozenset(selectors)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = self._solver.solve(tuple(key), budget=self.decision_budget)
        self._cache[key] = result
        return result

    def consistent(self, sentences: Iterable[Formula]) -> bool:
        return self.check_selected([self.selector_for(f) for f in sentences])

    def entails(self, sentences: Iterable[Formula], goal: Formula) -> bool:
        sels = [self.selector_for(f) for f in sentences]
        sels.append(self.selector_for(Not(goal)))
        return not self.check_selected(sels)


def is_consistent(sentences: Iterable[Formula], decision_budget: int = DEFAULT_DECISION_BUDGET) -> bool:
    """True iff the conjunction of the sentences is satisfiable."""
    return Reasoner(decision_budget).consistent(list(sentences))


def entails(sentences: Iterable[Formula], goal: Formula, decision_budget: int = DEFAULT_DECISION_BUDGET) -> bool:
    """True iff sentences ∪ {¬goal} is unsatisfiable."""
    return Reasoner(decision_budget).entails(list(sentences), goal)
