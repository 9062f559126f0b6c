"""Simulated measurement oracles.

The answer strategies model the quality of the available fault
information: a plausible oracle follows the estimated positive-class
probability x, a random oracle flips a fair coin, and an implausible
oracle inverts the estimate (answers positive with probability 1-x).
Each classification consumes exactly one uniform draw from the
session-owned stream, so oracle randomness does not depend on how many
candidates were evaluated before asking.
"""

from __future__ import annotations

from enum import Enum
from random import Random


class OracleStrategy(str, Enum):
    PLAUSIBLE = "plausible"
    RANDOM = "random"
    IMPLAUSIBLE = "implausible"


STRATEGY_ORDER = (OracleStrategy.PLAUSIBLE, OracleStrategy.RANDOM, OracleStrategy.IMPLAUSIBLE)


def parse_strategy(name: str) -> OracleStrategy:
    try:
        return OracleStrategy(name.strip().lower())
    except ValueError:
        raise ValueError(f"unknown oracle strategy {name!r} (expected "
                         f"plausible, random or implausible)") from None


def classify(strategy: OracleStrategy, x: float, rng: Random) -> str:
    """Classify a query with positive-class estimate x as 'P' or 'N'."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be a probability, got {x}")
    draw = rng.random()
    if strategy is OracleStrategy.PLAUSIBLE:
        threshold = x
    elif strategy is OracleStrategy.RANDOM:
        threshold = 0.5
    else:
        threshold = 1.0 - x
    return "P" if draw < threshold else "N"
