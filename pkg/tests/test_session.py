import pytest

from bruteforce import tt_minimal_diagnoses, tt_valid_diagnosis
from conftest import make_dpi
from diagseq.diagnosis import DiagnosisEngine
from diagseq.generator import GeneratorParams, generate_dpi, instantiate_fault_models
from diagseq.oracle import OracleStrategy
from diagseq.probmodel import DistKind, DistributionSpec, FaultModel
from diagseq.qsm import MEASURE_ORDER, Measure
from diagseq.session import SessionConfig, run_session


def uniform_fm(dpi, p=0.3):
    return FaultModel({}, {l: p for l in dpi.k.labels}, DistributionSpec(DistKind.EQ, 0.0, 0))


def config(measure=Measure.ENT, ld=10, strategy=OracleStrategy.PLAUSIBLE, seed=1, **kw):
    return SessionConfig(measure=measure, ld=ld, strategy=strategy, seed=seed, **kw)


def test_two_singletons_need_one_query():
    dpi = make_dpi(["A", "(not A)"])
    for strategy in OracleStrategy:
        for measure in (Measure.ENT, Measure.SPL, Measure.RND):
            result = run_session(dpi, uniform_fm(dpi), config(measure=measure, strategy=strategy))
            assert result.n_queries == 1
            assert not result.aborted
            assert result.target.axioms in ({"ax1"}, {"ax2"})


def test_unique_diagnosis_needs_no_query():
    dpi = make_dpi(["A"], p_texts=["A"])
    result = run_session(dpi, uniform_fm(dpi), config())
    assert result.n_queries == 0
    assert result.target.axioms == frozenset()


def test_final_dpi_has_single_minimal_diagnosis():
    dpi = make_dpi(["A", "(implies A B)", "(not B)", "(implies C D)", "C", "(not D)"])
    engine = DiagnosisEngine(dpi)
    result = run_session(dpi, uniform_fm(dpi), config(seed=3), engine=engine)
    assert not result.aborted
    finals = tt_minimal_diagnoses(engine.dpi)
    assert finals == {result.target.axioms}
    # and the target is valid for the final instance
    assert tt_valid_diagnosis(engine.dpi, result.target.axioms)


def test_every_answer_eliminates_at_least_one_diagnosis():
    dpi = generate_dpi(GeneratorParams(12, 6, 3, (2, 3), seed=5))
    fm = instantiate_fault_models(dpi, [DistKind.MOD], 1, master_seed=11)[0]
    for measure in MEASURE_ORDER:
        result = run_session(dpi, fm, config(measure=measure, seed=17))
        assert not result.aborted
        for step in result.trace:
            assert step.eliminated >= 1
            assert step.leading_size >= 2


def test_identical_seeds_reproduce_identical_traces():
    dpi = generate_dpi(GeneratorParams(14, 6, 3, (2, 4), seed=8))
    fm = instantiate_fault_models(dpi, [DistKind.STR], 1, master_seed=2)[0]
    cfg = config(measure=Measure.EMCB, strategy=OracleStrategy.RANDOM, seed=12345)
    r1 = run_session(dpi, fm, cfg)
    r2 = run_session(dpi, fm, cfg)
    assert r1.n_queries == r2.n_queries
    assert r1.answers == r2.answers
    assert r1.target == r2.target
    assert [s.format() for s in r1.trace] == [s.format() for s in r2.trace]


def test_measure_change_does_not_perturb_oracle_draws():
    # same seed, same first-query class probability -> same first answer even
    # though RND consumes selection randomness
    dpi = make_dpi(["A", "(not A)"])
    fm = uniform_fm(dpi)
    r_ent = run_session(dpi, fm, config(measure=Measure.ENT, strategy=OracleStrategy.RANDOM, seed=7))
    r_rnd = run_session(dpi, fm, config(measure=Measure.RND, strategy=OracleStrategy.RANDOM, seed=7))
    assert r_ent.answers[0][1] == r_rnd.answers[0][1]


def test_abort_on_query_cap():
    dpi = generate_dpi(GeneratorParams(12, 6, 3, (3, 3), seed=1))
    fm = instantiate_fault_models(dpi, [DistKind.EQ], 1, master_seed=1)[0]
    result = run_session(dpi, fm, config(seed=2, max_queries=1))
    assert result.aborted
    assert result.n_queries == 1
    assert result.target is None


def test_queries_never_repeat():
    dpi = generate_dpi(GeneratorParams(16, 6, 4, (2, 4), seed=21))
    fm = instantiate_fault_models(dpi, [DistKind.MOD], 1, master_seed=3)[0]
    result = run_session(dpi, fm, config(measure=Measure.SPL, seed=9))
    ids = [qid for qid, _ in result.answers]
    assert len(ids) == len(set(ids))


def test_rio_session_terminates():
    dpi = generate_dpi(GeneratorParams(15, 6, 3, (3, 4), seed=4))
    fm = instantiate_fault_models(dpi, [DistKind.STR], 1, master_seed=6)[0]
    for strategy in OracleStrategy:
        result = run_session(dpi, fm, config(measure=Measure.RIO, strategy=strategy, seed=31))
        assert not result.aborted


def test_config_validation():
    with pytest.raises(ValueError):
        config(ld=1)
    with pytest.raises(ValueError):
        config(max_queries=0)
