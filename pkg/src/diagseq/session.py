"""The sequential diagnosis loop: select a query, ask the oracle, record
the measurement, update beliefs, recompute leading diagnoses; stop once
the problem instance has a single minimal diagnosis.

Determinism contract: identical (dpi, fault model, config) reproduce an
identical result and trace. The oracle and the RND selector draw from
separate streams derived from the config seed by fixed labels, so
changing the measure never perturbs oracle draws.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from random import Random

from .diagnosis import Diagnosis, DiagnosisEngine
from .dpi import DPI
from .errors import ZeroMass
from .oracle import OracleStrategy, classify
from .probmodel import DiagnosisBelief, FaultModel, bayes_update, diagnosis_prior, normalize
from .qsm import Measure, RioState, init_rio_state, select_query, update_rio_state
from .query import candidate_pool, positive_class_prob

DEFAULT_MAX_QUERIES = 200


@dataclass(frozen=True)
class SessionConfig:
    measure: Measure
    ld: int
    strategy: OracleStrategy
    seed: int
    max_queries: int = DEFAULT_MAX_QUERIES

    def __post_init__(self):
        if self.ld < 2:
            raise ValueError("ld must be >= 2")
        if self.max_queries < 1:
            raise ValueError("max_queries must be >= 1")


@dataclass(frozen=True)
class TraceStep:
    step: int
    query_id: str
    x: float
    answer: str
    leading_size: int
    eliminated: int

    def format(self) -> str:
        return (f"{self.step},{self.query_id},{self.x:.6f},{self.answer},"
                f"{self.leading_size},{self.eliminated}")


@dataclass
class SessionResult:
    n_queries: int
    target: Diagnosis | None
    answers: list[tuple[str, str]]
    wall_time: float
    aborted: bool
    trace: list[TraceStep] = field(default_factory=list)


def run_session(dpi: DPI, fault_model: FaultModel, config: SessionConfig,
                engine: DiagnosisEngine | None = None) -> SessionResult:
    """Run one simulated sequential diagnosis session to completion."""
    start = time.perf_counter()
    if engine is None:
        engine = DiagnosisEngine(dpi)
    rng_oracle = Random(f"{config.seed}:oracle")
    rng_select = Random(f"{config.seed}:select")

    carried: dict[Diagnosis, float] = {}
    rio: RioState | None = None
    answers: list[tuple[str, str]] = []
    trace: list[TraceStep] = []
    asked: set = set()
    n_queries = 0
    aborted = False
    target: Diagnosis | None = None

    while True:
        leading = engine.leading_diagnoses(fault_model.ax_probs, config.ld)
        if len(leading) == 1:
            # leading_diagnoses returns fewer than ld only when fewer minimal
            # diagnoses exist, so with ld >= 2 this is the bound-2 stop test
            # on the full problem.
            target = leading[0]
            break
        if n_queries >= config.max_queries:
            aborted = True
            break

        beliefs = _merge_beliefs(leading, carried, fault_model, dpi)
        pool = candidate_pool(engine.dpi, leading, beliefs, engine)
        if config.measure is Measure.RIO:
            rio = _refresh_rio(rio, len(leading))
        q = select_query(config.measure, pool, rio, rng_select)
        qp = next(p for cand, p in pool if cand.id == q.id)
        assert q.sentence not in asked, "a query sentence was posed twice"
        asked.add(q.sentence)

        x = positive_class_prob(qp)
        answer = classify(config.strategy, x, rng_oracle)
        n_queries += 1
        answers.append((q.id, answer))

        if answer == "P":
            engine.add_positive(q.sentence)
            eliminated = len(qp.d_minus)
        else:
            engine.add_negative(q.sentence)
            eliminated = len(qp.d_plus)
        trace.append(TraceStep(n_queries, q.id, x, answer, len(leading), eliminated))

        try:
            posterior = bayes_update(beliefs, qp, answer)
            carried = {d: p for d, p in posterior.entries}
        except ZeroMass:
            carried = {}  # leading set must be rebuilt from priors
        if rio is not None:
            rio = update_rio_state(rio, eliminated, len(leading) - eliminated)

    return SessionResult(
        n_queries=n_queries,
        target=target,
        answers=answers,
        wall_time=time.perf_counter() - start,
        aborted=aborted,
        trace=trace,
    )


def _merge_beliefs(leading, carried: dict, fault_model: FaultModel, dpi: DPI) -> DiagnosisBelief:
    """Surviving diagnoses keep their Bayes-updated posterior; newly
    discovered ones enter with their normalized prior; then the whole
    vector is renormalized over the current leading set."""
    priors = [diagnosis_prior(d.axioms, dpi.k.labels, fault_model.ax_probs) for d in leading]
    prior_total = sum(priors)
    entries = []
    for d, prior in zip(leading, priors):
        if d in carried:
            entries.append((d, carried[d]))
        else:
            entries.append((d, prior / prior_total))
    return normalize(DiagnosisBelief(entries))


def _refresh_rio(rio: RioState | None, leading_size: int) -> RioState:
    if rio is None:
        return init_rio_state(leading_size)
    n = max(1, min(rio.n, max(1, leading_size // 2)))
    return RioState(n, leading_size)
