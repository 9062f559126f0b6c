"""Candidate queries and their q-partitions.

A query is a sentence whose positive and negative classification each
invalidate at least one leading diagnosis. Every sentence splits the
leading set into three blocks: D+ (diagnoses predicting a positive
classification), D- (predicting negative) and D0 (uncommitted). The
candidate pool consists of component probes q := ax for ax in K, which
are always strong (empty D0) with respect to minimal diagnoses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnosis import Diagnosis, DiagnosisEngine
from .dpi import DPI
from .errors import EmptyPool, InvalidPartition
from .formula import Formula
from .probmodel import DiagnosisBelief


@dataclass(frozen=True)
class Query:
    id: str
    sentence: Formula


@dataclass(frozen=True)
class QPartition:
    d_plus: tuple[Diagnosis, ...]
    d_minus: tuple[Diagnosis, ...]
    d_zero: tuple[Diagnosis, ...]
    p_plus: float | None = None
    p_minus: float | None = None
    p_zero: float | None = None

    @property
    def size(self) -> int:
        return len(self.d_plus) + len(self.d_minus) + len(self.d_zero)

    def with_probabilities(self, beliefs: DiagnosisBelief) -> "QPartition":
        """Attach block probabilities summed from normalized beliefs."""
        probs = {d: p for d, p in beliefs.entries}
        return QPartition(
            self.d_plus, self.d_minus, self.d_zero,
            p_plus=sum(probs[d] for d in self.d_plus),
            p_minus=sum(probs[d] for d in self.d_minus),
            p_zero=sum(probs[d] for d in self.d_zero),
        )


def is_strong(qp: QPartition) -> bool:
    """A strong query leaves no diagnosis uncommitted."""
    return len(qp.d_zero) == 0


def compute_qpartition(dpi: DPI, leading, q: Formula, beliefs: DiagnosisBelief | None = None,
                       engine: DiagnosisEngine | None = None, use_fast_path: bool = True) -> QPartition:
    """Assign each leading diagnosis to D+/D-/D0 for the sentence q.

    The general path re-checks validity of every diagnosis against the
    two hypothetical DPIs (q added to P, q added to N). When q is
    syntactically one of K's axioms and the leading diagnoses are
    minimal, the membership test reduces to set containment (the probe
    fast path); disable it with use_fast_path=False for equivalence
    testing against the definition.
    """
    if not leading:
        raise InvalidPartition("leading set must be nonempty")
    if engine is None:
        engine = DiagnosisEngine(dpi)

    plus: list[Diagnosis] = []
    minus: list[Diagnosis] = []
    zero: list[Diagnosis] = []

    probe_labels = frozenset(l for l, f in dpi.k if f == q) if use_fast_path else frozenset()
    if probe_labels:
        for d in leading:
            (minus if d.axioms & probe_labels else plus).append(d)
    else:
        for d in leading:
            valid_when_positive = engine.is_valid(d.axioms, extra_pos=(q,))
            valid_when_negative = engine.is_valid(d.axioms, extra_neg=(q,))
            if not valid_when_negative and not valid_when_positive:
                raise InvalidPartition(
                    f"diagnosis {d} is invalid for the base DPI (both hypothetical checks failed)")
            if not valid_when_negative:
                plus.append(d)
            elif not valid_when_positive:
                minus.append(d)
            else:
                zero.append(d)

    qp = QPartition(tuple(plus), tuple(minus), tuple(zero))
    if beliefs is not None:
        qp = qp.with_probabilities(beliefs)
    return qp


def candidate_pool(dpi: DPI, leading, beliefs: DiagnosisBelief | None = None,
                   engine: DiagnosisEngine | None = None,
                   use_fast_path: bool = True) -> list[tuple[Query, QPartition]]:
    """Component-probe queries ax in K (in axiom order) that qualify as
    queries for the leading set, paired with their q-partitions."""
    if len(leading) < 2:
        raise EmptyPool("need at least 2 leading diagnoses to form queries")
    if engine is None:
        engine = DiagnosisEngine(dpi)
    pool: list[tuple[Query, QPartition]] = []
    for label, f in dpi.k:
        qp = compute_qpartition(dpi, leading, f, beliefs, engine, use_fast_path)
        if qp.d_plus and qp.d_minus:
            pool.append((Query(label, f), qp))
    return pool


def positive_class_prob(qp: QPartition) -> float:
    """Estimated probability that the oracle classifies the query positive."""
    _require_probs(qp)
    return qp.p_plus + 0.5 * qp.p_zero


def negative_class_prob(qp: QPartition) -> float:
    _require_probs(qp)
    return qp.p_minus + 0.5 * qp.p_zero


def _require_probs(qp: QPartition) -> None:
    if qp.p_plus is None or qp.p_minus is None or qp.p_zero is None:
        raise InvalidPartition("q-partition has no block probabilities attached")
