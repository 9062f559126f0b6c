"""Fault probabilities: sub-component extraction, biased distribution
generation, axiom and diagnosis priors, and Bayesian belief updates.

Component axioms are treated as aggregates of sub-components given by
the logical operators occurring in them, plus one ATOM sub-component per
atomic-proposition occurrence (counted with multiplicity, so an
operator-free axiom still gets a nonzero fault probability).
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .dpi import SentenceSet
from .errors import MissingSubComponent, UnknownLabel, ZeroMass
from .formula import And, Atom, Const, Formula, Iff, Implies, Not, Or

# Probabilities are clamped away from 0/1 so Bayes updates and
# probability-ordered search never see degenerate masses.
PROB_EPS = 1e-6

MOD_LAMBDA = 0.5
STR_LAMBDA = 1.75


class DistKind(str, Enum):
    EQ = "EQ"
    MOD = "MOD"
    STR = "STR"


def parse_dist_kind(name: str) -> DistKind:
    try:
        return DistKind(name.strip().upper())
    except ValueError:
        raise ValueError(f"unknown distribution kind {name!r} (expected eq, mod or str)") from None


@dataclass(frozen=True)
class DistributionSpec:
    kind: DistKind
    lam: float
    seed: int

    def __post_init__(self):
        if self.kind is not DistKind.EQ and self.lam <= 0:
            raise ValueError("lambda must be positive for MOD/STR")


def make_spec(kind: DistKind, seed: int) -> DistributionSpec:
    lam = {DistKind.EQ: 0.0, DistKind.MOD: MOD_LAMBDA, DistKind.STR: STR_LAMBDA}[kind]
    return DistributionSpec(kind, lam, seed)


@dataclass(frozen=True)
class FaultModel:
    sc_probs: dict[str, float]
    ax_probs: dict[str, float]
    spec: DistributionSpec


def clamp_prob(p: float) -> float:
    return min(max(p, PROB_EPS), 1.0 - PROB_EPS)


def extract_subcomponents(k: SentenceSet) -> dict[str, Counter]:
    """Per axiom label, the multiset of sub-component kinds occurring in it."""
    return {label: _count(f) for label, f in k}


def _count(f: Formula) -> Counter:
    c: Counter = Counter()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            c["ATOM"] += 1
        elif isinstance(node, Const):
            pass
        elif isinstance(node, Not):
            c["NOT"] += 1
            stack.append(node.child)
        elif isinstance(node, And):
            c["AND"] += 1
            stack.extend(node.children)
        elif isinstance(node, Or):
            c["OR"] += 1
            stack.extend(node.children)
        elif isinstance(node, Implies):
            c["IMPLIES"] += 1
            stack.append(node.lhs)
            stack.append(node.rhs)
        elif isinstance(node, Iff):
            c["IFF"] += 1
            stack.append(node.lhs)
            stack.append(node.rhs)
    return c


def generate_distribution(spec: DistributionSpec, sc_kinds) -> dict[str, float]:
    """Assign a fault probability to every sub-component kind.

    EQ draws one shared value r ~ U[0,1] for all kinds. MOD/STR assign
    each kind a distinct index i in 1..|SC| (a seeded random permutation)
    and the value lam*exp(-lam*x) for x ~ U[i-1/2, i+1/2), i.e. samples
    of the exponential density around consecutive integers, descending
    on average by a factor e^lam between consecutive sorted values.
    """
    kinds = sorted(sc_kinds)
    if not kinds:
        raise ValueError("sc_kinds must be nonempty")
    rng = random.Random(f"dist:{spec.kind.value}:{spec.seed}")
    if spec.kind is DistKind.EQ:
        r = clamp_prob(rng.random())
        return {kind: r for kind in kinds}
    indices = rng.sample(range(1, len(kinds) + 1), len(kinds))
    out: dict[str, float] = {}
    for kind, i in zip(kinds, indices):
        x = (i - 0.5) + rng.random()
        out[kind] = spec.lam * math.exp(-spec.lam * x)
    return out


def axiom_fault_prob(sub_components: Counter, sc_probs: dict[str, float]) -> float:
    """1 - prod over occurrences (with multiplicity) of (1 - p(sc)), clamped."""
    prod = 1.0
    for kind, count in sub_components.items():
        p = sc_probs.get(kind)
        if p is None:
            raise MissingSubComponent(f"no probability for sub-component kind {kind!r}")
        prod *= (1.0 - p) ** count
    return clamp_prob(1.0 - prod)


def build_fault_model(k: SentenceSet, spec: DistributionSpec) -> FaultModel:
    subcomps = extract_subcomponents(k)
    kinds = set()
    for c in subcomps.values():
        kinds.update(c)
    sc_probs = {kind: clamp_prob(p) for kind, p in generate_distribution(spec, kinds).items()}
    ax_probs = {label: axiom_fault_prob(subcomps[label], sc_probs) for label in k.labels}
    return FaultModel(sc_probs, ax_probs, spec)


def diagnosis_prior(axioms, k_labels, ax_probs: dict[str, float]) -> float:
    """Un-normalized product prior: faulty axioms contribute p(ax), the
    rest (1 - p(ax))."""
    inside = set(axioms)
    unknown = inside.difference(k_labels)
    if unknown:
        raise UnknownLabel(f"labels not in K: {', '.join(sorted(unknown))}")
    prod = 1.0
    for label in k_labels:
        p = ax_probs[label]
        prod *= p if label in inside else (1.0 - p)
    return prod


@dataclass
class DiagnosisBelief:
    """Probability vector over tracked diagnoses (order-preserving)."""

    entries: list[tuple]  # (Diagnosis, probability)
    normalized: bool = False

    def total(self) -> float:
        return sum(p for _, p in self.entries)

    def probability_of(self, diagnosis) -> float:
        for d, p in self.entries:
            if d == diagnosis:
                return p
        raise KeyError(diagnosis)


def normalize(beliefs: DiagnosisBelief) -> DiagnosisBelief:
    total = beliefs.total()
    if total <= 0.0:
        raise ZeroMass("cannot normalize: total probability mass is zero")
    return DiagnosisBelief([(d, p / total) for d, p in beliefs.entries], normalized=True)


def bayes_update(beliefs: DiagnosisBelief, qp, answer: str) -> DiagnosisBelief:
    """Posterior after classifying the query behind qp as 'P' or 'N'.

    Diagnoses in the agreeing block keep weight x1, uncommitted ones
    x1/2, contradicted ones are removed; the result is renormalized.
    """
    if answer not in ("P", "N"):
        raise ValueError(f"answer must be 'P' or 'N', got {answer!r}")
    agreeing = set(qp.d_plus if answer == "P" else qp.d_minus)
    uncommitted = set(qp.d_zero)
    eliminated = set(qp.d_minus if answer == "P" else qp.d_plus)
    updated = []
    for d, p in beliefs.entries:
        if d in agreeing:
            updated.append((d, p))
        elif d in uncommitted:
            updated.append((d, 0.5 * p))
        elif d in eliminated:
            continue
        else:
            raise ValueError(f"diagnosis {d} not covered by the q-partition")
    result = DiagnosisBelief(updated)
    if result.total() <= 0.0:
        raise ZeroMass("answer eliminated all tracked diagnoses; recompute the leading set")
    return normalize(result)


# -- FaultModel serialization (round-trippable CSV) -------------------------


def _fmt(p: float) -> str:
    return format(p, ".17g")


def write_fault_model(fm: FaultModel, sc_path, ax_path) -> None:
    with open(sc_path, "w", encoding="utf-8") as fh:
        fh.write("kind,probability\n")
        for kind in sorted(fm.sc_probs):
            fh.write(f"{kind},{_fmt(fm.sc_probs[kind])}\n")
    with open(ax_path, "w", encoding="utf-8") as fh:
        fh.write("label,probability\n")
        for label in fm.ax_probs:
            fh.write(f"{label},{_fmt(fm.ax_probs[label])}\n")


def read_fault_model(sc_path, ax_path, spec: DistributionSpec | None = None) -> FaultModel:
    def read_rows(path):
        out = {}
        with open(path, encoding="utf-8") as fh:
            next(fh)  # header
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                key, _, val = line.partition(",")
                out[key] = float(val)
        return out

    return FaultModel(read_rows(sc_path), read_rows(ax_path),
                      spec or DistributionSpec(DistKind.EQ, 0.0, 0))
