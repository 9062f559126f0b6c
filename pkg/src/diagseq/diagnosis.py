"""Diagnosis computation over a DPI: validity checking, minimal-conflict
extraction (QuickXplain), and probability-ordered enumeration of leading
minimal diagnoses via a best-first hitting-set tree.

A diagnosis is a subset D of K's labels such that (K \\ D) ∪ B ∪ P is
consistent and entails no negative measurement; minimal diagnoses are
exactly the minimal hitting sets of the minimal conflicts. The HS-tree
expands nodes best-first on an optimistic probability bound, so
diagnoses are emitted in non-increasing prior probability even when
some axiom fault probabilities exceed one half.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .dpi import DPI
from .errors import UnknownLabel, Unsolvable
from .formula import Formula, Not
from .reasoner import Reasoner
from .sat import DEFAULT_DECISION_BUDGET


@dataclass(frozen=True)
class Diagnosis:
    axioms: frozenset[str]

    @staticmethod
    def of(*labels: str) -> "Diagnosis":
        return Diagnosis(frozenset(labels))

    def sorted_labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.axioms))

    def __str__(self) -> str:
        return "{" + ",".join(self.sorted_labels()) + "}"


@dataclass(frozen=True)
class Conflict:
    axioms: frozenset[str]

    def sorted_labels(self) -> tuple[str, ...]:
        return tuple(sorted(self.axioms))


class DiagnosisEngine:
    """Holds the reasoner, the growing DPI, and reusable minimal conflicts
    for one diagnosis session. Not shared between threads."""

    def __init__(self, dpi: DPI, decision_budget: int = DEFAULT_DECISION_BUDGET,
                 max_diagnosis_size: int | None = None, reuse_conflicts: bool = True):
        self.dpi = dpi
        self.reasoner = Reasoner(decision_budget)
        self.max_diagnosis_size = max_diagnosis_size if max_diagnosis_size is not None else len(dpi.k)
        self.reuse_conflicts = reuse_conflicts
        self._labels = dpi.k.labels
        self._index = {label: i for i, label in enumerate(self._labels)}
        self._k_sel = {label: self.reasoner.selector_for(f) for label, f in dpi.k}
        self._base_sels = [self.reasoner.selector_for(f) for _, f in dpi.b]
        self._base_sels += [self.reasoner.selector_for(f) for _, f in dpi.p]
        self._negn_sels = [self.reasoner.selector_for(Not(f)) for _, f in dpi.n]
        self._conflicts: list[frozenset[str]] = []

    # -- DPI growth ----------------------------------------------------------

    def add_positive(self, f: Formula) -> None:
        self.dpi = self.dpi.with_positive(f)
        self._base_sels.append(self.reasoner.selector_for(f))
        self._refresh_conflicts()

    def add_negative(self, f: Formula) -> None:
        self.dpi = self.dpi.with_negative(f)
        self._negn_sels.append(self.reasoner.selector_for(Not(f)))
        self._refresh_conflicts()

    def _refresh_conflicts(self) -> None:
        if not self.reuse_conflicts:
            self._conflicts = []
            return
        # Old conflicts stay conflicts when measurements are added, but may
        # lose subset-minimality; re-minimize each against the new DPI.
        refreshed: list[frozenset[str]] = []
        for c in self._conflicts:
            ordered = tuple(sorted(c, key=self._index.__getitem__))
            minimized = self._quickxplain(ordered)
            if minimized not in refreshed:
                refreshed.append(minimized)
        self._conflicts = refreshed

    # -- core validity predicate ----------------------------------------------

    def _ok(self, present_sels: list[int], extra_neg_sels: list[int]) -> bool:
        """True iff the selected sentence set is consistent and entails no
        registered negative measurement."""
        neg = self._negn_sels + extra_neg_sels
        if self.reasoner.check_selected(present_sels + neg):
            # One model satisfies every ¬n at once: consistent, nothing entailed.
            return True
        if not neg:
            return False
        if not self.reasoner.check_selected(present_sels):
            return False
        for ns in neg:
            if not self.reasoner.check_selected(present_sels + [ns]):
                return False
        return True

    def _sels_for(self, k_labels, extra_pos=()) -> list[int]:
        sels = [self._k_sel[l] for l in k_labels]
        sels += self._base_sels
        sels += [self.reasoner.selector_for(f) for f in extra_pos]
        return sels

    def ok_subset(self, k_labels, extra_pos=(), extra_neg=()) -> bool:
        """Validity predicate on an arbitrary K subset, with optional
        hypothetical extra measurements (used for q-partition checks)."""
        extra_neg_sels = [self.reasoner.selector_for(Not(f)) for f in extra_neg]
        return self._ok(self._sels_for(k_labels, extra_pos), extra_neg_sels)

    def is_valid(self, diagnosis_axioms, extra_pos=(), extra_neg=()) -> bool:
        removed = set(diagnosis_axioms)
        unknown = removed.difference(self._labels)
        if unknown:
            raise UnknownLabel(f"labels not in K: {', '.join(sorted(unknown))}")
        present = [l for l in self._labels if l not in removed]
        return self.ok_subset(present, extra_pos, extra_neg)

    # -- minimal conflicts ----------------------------------------------------

    def minimal_conflict(self, candidates=None) -> frozenset[str] | None:
        """A subset-minimal conflict within candidates, or None if the
        candidate set is conflict-free together with B and P."""
        if candidates is None:
            candidates = self._labels
        ordered = tuple(sorted(set(candidates), key=self._index.__getitem__))
        unknown = set(candidates).difference(self._labels)
        if unknown:
            raise UnknownLabel(f"labels not in K: {', '.join(sorted(unknown))}")
        if self.ok_subset(ordered):
            return None
        return self._quickxplain(ordered)

    def _quickxplain(self, cands: tuple[str, ...]) -> frozenset[str]:
        if not self.ok_subset(()):
            return frozenset()  # B u P alone violates; nothing in K to blame
        return frozenset(self._qx((), cands, False))

    def _qx(self, background: tuple[str, ...], cands: tuple[str, ...], has_delta: bool) -> tuple[str, ...]:
        if has_delta and not self.ok_subset(background):
            return ()
        if len(cands) <= 1:
            return cands
        mid = len(cands) // 2
        c1, c2 = cands[:mid], cands[mid:]
        d2 = self._qx(background + c1, c2, True)
        d1 = self._qx(background + d2, c1, bool(d2))
        return d1 + d2

    def _conflict_for(self, hit: frozenset[str]) -> frozenset[str] | None:
        """A minimal conflict disjoint from the hitting set, reusing stored
        conflicts where possible; None if K \\ hit is conflict-free."""
        for c in self._conflicts:
            if c.isdisjoint(hit):
                return c
        candidates = tuple(l for l in self._labels if l not in hit)
        c = self.minimal_conflict(candidates)
        if c is not None:
            self._conflicts.append(c)
        return c

    # -- leading diagnoses ------------------------------------------------------

    def leading_diagnoses(self, ax_probs: dict[str, float], ld: int | None) -> list[Diagnosis]:
        """Up to ld minimal diagnoses in non-increasing prior probability
        (ld=None enumerates all). Ties break on the sorted axiom-index
        tuple of the diagnosis."""
        labels = self._labels
        index = self._index
        log_rho = {}
        for l in labels:
            p = ax_probs[l]
            log_rho[l] = math.log(p) - math.log1p(-p)
        pos_total = sum(v for v in log_rho.values() if v > 0.0)

        def bonus(h: frozenset[str]) -> float:
            return pos_total - sum(log_rho[l] for l in h if log_rho[l] > 0.0)

        def tie_key(h: frozenset[str]) -> tuple[int, ...]:
            return tuple(sorted(index[l] for l in h))

        # entries: (-optimistic score, kind, tie key, member set, true score).
        # kind 0 = open node, 1 = verified diagnosis awaiting emission; at
        # equal score open nodes pop first so every tied diagnosis is
        # discovered before any is emitted.
        root: frozenset[str] = frozenset()
        heap: list = [(-(bonus(root)), 0, (), root, 0.0)]
        visited: set[frozenset[str]] = set()
        emitted: list[frozenset[str]] = []

        while heap:
            _, kind, _, h, g = heapq.heappop(heap)
            if kind == 1:
                if any(h >= e for e in emitted):
                    continue
                emitted.append(h)
                if ld is not None and len(emitted) >= ld:
                    break
                continue
            if h in visited:
                continue
            visited.add(h)
            if any(h >= e for e in emitted):
                continue
            conflict = self._conflict_for(h)
            if conflict is None:
                # h is a valid diagnosis; minimal iff dropping any single
                # axiom breaks validity (validity is monotone in supersets).
                present = [l for l in labels if l not in h]
                minimal = True
                for ax in sorted(h, key=index.__getitem__):
                    if self.ok_subset(present + [ax]):
                        minimal = False
                        break
                if minimal:
                    heapq.heappush(heap, (-g, 1, tie_key(h), h, g))
                continue
            if len(h) >= self.max_diagnosis_size:
                continue
            for ax in sorted(conflict, key=index.__getitem__):
                child = h | {ax}
                if child in visited:
                    continue
                g_child = g + log_rho[ax]
                f_child = g_child + bonus(child)
                heapq.heappush(heap, (-f_child, 0, tie_key(child), child, g_child))

        if not emitted:
            raise Unsolvable("no diagnosis exists for this DPI")
        return [Diagnosis(h) for h in emitted]

    def count_minimal_up_to(self, bound: int) -> int:
        uniform = {l: 0.5 for l in self._labels}
        return len(self.leading_diagnoses(uniform, bound))


# -- one-shot module-level operations ----------------------------------------


def is_valid_diagnosis(dpi: DPI, d: Diagnosis, decision_budget: int = DEFAULT_DECISION_BUDGET) -> bool:
    return DiagnosisEngine(dpi, decision_budget).is_valid(d.axioms)


def minimal_conflict(dpi: DPI, candidates=None, decision_budget: int = DEFAULT_DECISION_BUDGET) -> Conflict | None:
    c = DiagnosisEngine(dpi, decision_budget).minimal_conflict(candidates)
    return None if c is None else Conflict(c)


def leading_diagnoses(dpi: DPI, fault_model, ld: int | None,
                      decision_budget: int = DEFAULT_DECISION_BUDGET,
                      max_diagnosis_size: int | None = None) -> list[Diagnosis]:
    engine = DiagnosisEngine(dpi, decision_budget, max_diagnosis_size)
    return engine.leading_diagnoses(fault_model.ax_probs, ld)


def count_minimal_diagnoses_up_to(dpi: DPI, bound: int,
                                  decision_budget: int = DEFAULT_DECISION_BUDGET) -> int:
    return DiagnosisEngine(dpi, decision_budget).count_minimal_up_to(bound)
