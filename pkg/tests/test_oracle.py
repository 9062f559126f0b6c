import random

import pytest

from diagseq.oracle import OracleStrategy, classify, parse_strategy


def test_parse_strategy():
    assert parse_strategy("PLAUSIBLE") is OracleStrategy.PLAUSIBLE
    assert parse_strategy(" random ") is OracleStrategy.RANDOM
    with pytest.raises(ValueError):
        parse_strategy("optimistic")


def test_plausible_certain():
    rng = random.Random(1)
    assert all(classify(OracleStrategy.PLAUSIBLE, 1.0, rng) == "P" for _ in range(100))


def test_implausible_inverts_certainty():
    rng = random.Random(1)
    assert all(classify(OracleStrategy.IMPLAUSIBLE, 1.0, rng) == "N" for _ in range(100))


def test_random_frequency():
    rng = random.Random(31415)
    draws = 10_000
    positives = sum(classify(OracleStrategy.RANDOM, 0.9, rng) == "P" for _ in range(draws))
    assert abs(positives / draws - 0.5) <= 0.015  # 3 sigma of a fair binomial


def test_plausible_and_inverted_implausible_identical():
    for x in (0.0, 0.2, 0.5, 0.73, 1.0):
        a = [classify(OracleStrategy.PLAUSIBLE, x, random.Random(9)) for _ in range(50)]
        b = [classify(OracleStrategy.IMPLAUSIBLE, 1.0 - x, random.Random(9)) for _ in range(50)]
        assert a == b


def test_deterministic_given_seed_and_index():
    seq1 = [classify(OracleStrategy.PLAUSIBLE, 0.4, random.Random(5)) for _ in range(1)]
    seq2 = [classify(OracleStrategy.PLAUSIBLE, 0.4, random.Random(5)) for _ in range(1)]
    assert seq1 == seq2


def test_consumes_exactly_one_draw():
    rng1, rng2 = random.Random(77), random.Random(77)
    classify(OracleStrategy.PLAUSIBLE, 0.6, rng1)
    rng2.random()
    assert rng1.random() == rng2.random()


def test_x_must_be_probability():
    with pytest.raises(ValueError):
        classify(OracleStrategy.PLAUSIBLE, 1.2, random.Random(0))
