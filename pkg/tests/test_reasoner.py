import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bruteforce import tt_entails, tt_satisfiable
from diagseq.errors import ResourceLimit
from diagseq.formula import Atom, Not, parse_formula
from diagseq.reasoner import Reasoner, entails, is_consistent

from test_formula import formulas


def fs(*texts):
    return [parse_formula(t) for t in texts]


def test_direct_contradiction():
    assert is_consistent(fs("A", "(not A)")) is False


def test_empty_set_consistent():
    assert is_consistent([]) is True


def test_modus_tollens_chain():
    # frozen via truth-table enumeration over {A, B}
    assert tt_satisfiable(fs("A", "(implies A B)", "(not B)")) is False
    assert is_consistent(fs("A", "(implies A B)", "(not B)")) is False


def test_entails_modus_ponens():
    assert entails(fs("A", "(implies A B)"), parse_formula("B")) is True


def test_entails_independent_atoms():
    assert entails(fs("A"), parse_formula("B")) is False


def test_entails_reflexive():
    assert entails(fs("(not B)"), parse_formula("(not B)")) is True


def test_constants():
    assert is_consistent(fs("true")) is True
    assert is_consistent(fs("false")) is False
    assert is_consistent(fs("(iff A false)", "A")) is False


@settings(max_examples=200, deadline=None)
@given(st.lists(formulas(), min_size=0, max_size=5))
def test_consistency_agrees_with_truth_tables(formula_set):
    assert is_consistent(formula_set) == tt_satisfiable(formula_set)


@settings(max_examples=100, deadline=None)
@given(st.lists(formulas(), min_size=0, max_size=4), formulas())
def test_entailment_duality(formula_set, goal):
    expected = tt_entails(formula_set, goal)
    assert entails(formula_set, goal) == expected
    assert entails(formula_set, goal) == (not is_consistent(list(formula_set) + [Not(goal)]))


def test_incremental_selector_queries_are_consistent_with_one_shot():
    rng = random.Random(7)
    names = ["A", "B", "C", "D"]
    pool = []
    for _ in range(10):
        a, b = rng.sample(names, 2)
        pool.append(parse_formula(f"(implies {a} {b})"))
        pool.append(parse_formula(f"(not {rng.choice(names)})"))
        pool.append(parse_formula(rng.choice(names)))
    reasoner = Reasoner()
    for _ in range(50):
        subset = rng.sample(pool, rng.randint(0, 6))
        assert reasoner.consistent(subset) == tt_satisfiable(subset)


def test_resource_limit_budget():
    # pigeonhole-flavored instance: n+1 items, n slots, all-different;
    # a budget of 1 decision cannot finish the search
    n = 6
    slots = [[Atom(f"x{i}_{j}") for j in range(n)] for i in range(n + 1)]
    sentences = []
    from diagseq.formula import And, Or

    for i in range(n + 1):
        sentences.append(Or(tuple(slots[i])))
    for j in range(n):
        for i1 in range(n + 1):
            for i2 in range(i1 + 1, n + 1):
                sentences.append(Or((Not(slots[i1][j]), Not(slots[i2][j]))))
    with pytest.raises(ResourceLimit):
        is_consistent(sentences, decision_budget=1)


def test_reasoner_instances_are_independent():
    r1, r2 = Reasoner(), Reasoner()
    assert r1.consistent(fs("A")) is True
    assert r2.consistent(fs("(not A)")) is True
    assert r1.consistent(fs("A", "(not A)")) is False
