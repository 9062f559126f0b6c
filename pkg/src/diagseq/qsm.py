"""The eight query-selection measures and the arg-best selection rule.

Measure values are computed from a candidate's q-partition alone:

    ENT   sum_c p(class=c) log2 p(class=c)             minimize
    SPL   | |D+| - |D-| |                               minimize
    KL    -sum_X (|X|/|D+ u D-|) log2(p(X)/p(D+ u D-))  maximize
    EMCb  p(P) |D-| + p(N) |D+|                         maximize
    MPS   p(min block) if it is a singleton, else 0     maximize
    BME   size of the less probable block, 0 on ties    maximize
    RIO   ENT/2 + penalty on worst-case elimination     minimize
    RND   uniform choice, no pointwise value

RIO's n parameter (the minimum number of diagnoses the chosen query must
eliminate in the worst case) is adapted by reinforcement between
queries: raise n after a weak elimination, lower it after a strong one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from random import Random

from .errors import EmptyPool, InvalidPartition, MissingRioState
from .query import QPartition, Query, negative_class_prob, positive_class_prob

MAXIMIZE = "maximize"
MINIMIZE = "minimize"


class Measure(str, Enum):
    ENT = "ent"
    SPL = "spl"
    KL = "kl"
    EMCB = "emcb"
    MPS = "mps"
    BME = "bme"
    RIO = "rio"
    RND = "rnd"


DIRECTION = {
    Measure.ENT: MINIMIZE,
    Measure.SPL: MINIMIZE,
    Measure.KL: MAXIMIZE,
    Measure.EMCB: MAXIMIZE,
    Measure.MPS: MAXIMIZE,
    Measure.BME: MAXIMIZE,
    Measure.RIO: MINIMIZE,
    Measure.RND: None,  # no direction: sampled, not optimized
}

MEASURE_ORDER = (Measure.ENT, Measure.SPL, Measure.KL, Measure.EMCB,
                 Measure.MPS, Measure.BME, Measure.RIO, Measure.RND)


def parse_measure(name: str) -> Measure:
    try:
        return Measure(name.strip().lower())
    except ValueError:
        raise ValueError(f"unknown measure {name!r} (expected one of "
                         f"{', '.join(m.value for m in MEASURE_ORDER)})") from None


@dataclass(frozen=True)
class RioState:
    n: int
    leading_size: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


def init_rio_state(leading_size: int) -> RioState:
    n = max(1, math.ceil(leading_size / 4))
    return RioState(min(n, max(1, leading_size // 2)), leading_size)


def update_rio_state(rio: RioState, eliminated: int, new_leading_size: int) -> RioState:
    """Reinforcement step: eliminating fewer than half of the previous
    leading set makes the requirement more cautious (n+1), otherwise n-1;
    clamped to [1, floor(new_size/2)]."""
    if eliminated < math.ceil(rio.leading_size / 2):
        n = rio.n + 1
    else:
        n = rio.n - 1
    n = max(1, min(n, max(1, new_leading_size // 2)))
    return RioState(n, new_leading_size)


def _xlog2x(p: float) -> float:
    return 0.0 if p == 0.0 else p * math.log2(p)


def evaluate_measure(measure: Measure, qp: QPartition, rio: RioState | None = None) -> float:
    """m(q) for the candidate behind qp; RND has no pointwise value."""
    if measure is Measure.RND:
        raise ValueError("RND samples uniformly and has no pointwise value")
    if measure is Measure.RIO and rio is None:
        raise MissingRioState("RIO evaluation needs the reinforcement state")
    if not qp.d_plus and not qp.d_minus:
        raise InvalidPartition("both committed blocks are empty")

    n_plus, n_minus = len(qp.d_plus), len(qp.d_minus)

    if measure is Measure.SPL:
        return float(abs(n_plus - n_minus))

    if measure in (Measure.ENT, Measure.EMCB, Measure.RIO):
        pc_pos = positive_class_prob(qp)
        pc_neg = negative_class_prob(qp)
        if measure is Measure.EMCB:
            return pc_pos * n_minus + pc_neg * n_plus
        ent = _xlog2x(pc_pos) + _xlog2x(pc_neg)
        if measure is Measure.ENT:
            return ent
        c_q = min(n_plus, n_minus)
        penalty = (c_q - rio.n) if c_q >= rio.n else qp.size
        return ent / 2.0 + penalty

    if measure is Measure.KL:
        p_plus, p_minus = qp.p_plus, qp.p_minus
        if p_plus is None or p_minus is None:
            raise InvalidPartition("q-partition has no block probabilities attached")
        committed_p = p_plus + p_minus
        committed_n = n_plus + n_minus
        total = 0.0
        for n_block, p_block in ((n_plus, p_plus), (n_minus, p_minus)):
            if n_block == 0:
                continue
            if p_block <= 0.0:
                return -math.inf  # disqualified under maximization
            total += (n_block / committed_n) * math.log2(p_block / committed_p)
        return -total

    if measure in (Measure.MPS, Measure.BME) and (qp.p_plus is None or qp.p_minus is None):
        raise InvalidPartition("q-partition has no block probabilities attached")

    if measure is Measure.MPS:
        if n_plus == n_minus == 1:
            return max(qp.p_plus, qp.p_minus)
        if n_plus < n_minus:
            return qp.p_plus if n_plus == 1 else 0.0
        if n_minus < n_plus:
            return qp.p_minus if n_minus == 1 else 0.0
        return 0.0

    if measure is Measure.BME:
        if qp.p_minus < qp.p_plus:
            return float(n_minus)
        if qp.p_plus < qp.p_minus:
            return float(n_plus)
        return 0.0

    raise ValueError(f"unhandled measure {measure}")


def select_query(measure: Measure, pool: list[tuple[Query, QPartition]],
                 rio: RioState | None = None, rng: Random | None = None) -> Query:
    """The pool element optimizing the measure in its direction; ties go to
    the smallest pool index. RND ignores values and samples uniformly."""
    if not pool:
        raise EmptyPool("candidate pool is empty")
    if measure is Measure.RND:
        if rng is None:
            raise ValueError("RND selection needs a seeded rng")
        return pool[rng.randrange(len(pool))][0]
    best_idx = 0
    best_val = evaluate_measure(measure, pool[0][1], rio)
    better = (lambda a, b: a > b) if DIRECTION[measure] == MAXIMIZE else (lambda a, b: a < b)
    for i in range(1, len(pool)):
        val = evaluate_measure(measure, pool[i][1], rio)
        if better(val, best_val):
            best_idx, best_val = i, val
    return pool[best_idx][0]
