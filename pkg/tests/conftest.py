import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import random

import pytest

from diagseq.diagnosis import Diagnosis
from diagseq.dpi import DPI, SentenceSet
from diagseq.formula import Atom, Implies, Not, Or, parse_formula
from diagseq.probmodel import DiagnosisBelief
from diagseq.query import QPartition, Query


def make_dpi(k_texts, b_texts=(), p_texts=(), n_texts=()):
    return DPI(
        SentenceSet.auto([parse_formula(t) for t in k_texts], prefix="ax"),
        SentenceSet.auto([parse_formula(t) for t in b_texts], prefix="b"),
        SentenceSet.auto([parse_formula(t) for t in p_texts], prefix="p"),
        SentenceSet.auto([parse_formula(t) for t in n_texts], prefix="n"),
    )


def random_small_dpi(rng: random.Random) -> DPI:
    """A random DPI over few atoms for brute-force comparison tests.

    Axioms are random literals, implications and binary clauses; about
    half the instances get one negative measurement.
    """
    atom_names = ["A", "B", "C", "D", "E", "F"][: rng.randint(3, 6)]
    n_axioms = rng.randint(3, 8)

    def literal():
        a = Atom(rng.choice(atom_names))
        return a if rng.random() < 0.6 else Not(a)

    axioms = []
    for _ in range(n_axioms):
        shape = rng.random()
        if shape < 0.35:
            axioms.append(literal())
        elif shape < 0.75:
            axioms.append(Implies(literal(), literal()))
        else:
            axioms.append(Or((literal(), literal())))
    n_texts = []
    if rng.random() < 0.5:
        n_texts = [rng.choice(atom_names)]
    return make_dpi([str(f) for f in axioms], n_texts=n_texts)


# -- the worked-example fixture (golden values from the source tables) --------

EXAMPLE_DIAGNOSES = {
    "D1": Diagnosis.of("ax2", "ax3"),
    "D2": Diagnosis.of("ax2", "ax5"),
    "D3": Diagnosis.of("ax2", "ax6"),
    "D4": Diagnosis.of("ax2", "ax7"),
    "D5": Diagnosis.of("ax1", "ax4", "ax7"),
    "D6": Diagnosis.of("ax3", "ax4", "ax7"),
}

EXAMPLE_PROBS = {"D1": 0.01, "D2": 0.33, "D3": 0.14, "D4": 0.07, "D5": 0.41, "D6": 0.04}

# q-partition memberships of the seven component probes, D+ block then D-.
EXAMPLE_PARTITIONS = {
    "q1": (("D1", "D2", "D3", "D4", "D6"), ("D5",)),
    "q2": (("D5", "D6"), ("D1", "D2", "D3", "D4")),
    "q3": (("D2", "D3", "D4", "D5"), ("D1", "D6")),
    "q4": (("D1", "D2", "D3", "D4"), ("D5", "D6")),
    "q5": (("D1", "D3", "D4", "D5", "D6"), ("D2",)),
    "q6": (("D1", "D2", "D4", "D5", "D6"), ("D3",)),
    "q7": (("D1", "D2", "D3"), ("D4", "D5", "D6")),
}


def example_beliefs() -> DiagnosisBelief:
    entries = [(EXAMPLE_DIAGNOSES[name], EXAMPLE_PROBS[name]) for name in sorted(EXAMPLE_DIAGNOSES)]
    return DiagnosisBelief(entries, normalized=True)


def example_pool():
    """The seven probe queries with their q-partitions and probabilities."""
    beliefs = example_beliefs()
    pool = []
    for i in range(1, 8):
        qid = f"q{i}"
        plus_names, minus_names = EXAMPLE_PARTITIONS[qid]
        qp = QPartition(
            tuple(EXAMPLE_DIAGNOSES[n] for n in plus_names),
            tuple(EXAMPLE_DIAGNOSES[n] for n in minus_names),
            (),
        ).with_probabilities(beliefs)
        pool.append((Query(qid, Atom(f"ax{i}")), qp))
    return pool


@pytest.fixture
def worked_example_pool():
    return example_pool()
