import pytest

from bruteforce import tt_minimal_conflicts, tt_minimal_diagnoses, tt_satisfiable
from diagseq.dpi import format_dpi
from diagseq.errors import InfeasibleParams
from diagseq.generator import GeneratorParams, generate_dpi, instantiate_fault_models
from diagseq.probmodel import DistKind


def test_single_conflict_of_three():
    dpi = generate_dpi(GeneratorParams(3, 2, 1, (3, 3), seed=0))
    assert len(dpi.k) == 3
    assert len(tt_minimal_diagnoses(dpi)) == 3  # three singletons, chain-style


def test_two_disjoint_size_two_conflicts_give_four_diagnoses():
    for seed in range(30):
        dpi = generate_dpi(GeneratorParams(8, 4, 2, (2, 2), seed=seed))
        conflicts = tt_minimal_conflicts(dpi)
        assert len(conflicts) == 2
        if not (set.union(*map(set, conflicts)) and len(set.union(*map(set, conflicts))) == 4):
            continue  # overlapping draw; the disjoint case is checked below
        assert len(tt_minimal_diagnoses(dpi)) == 4
        return
    pytest.fail("no disjoint sample among 30 seeds")


def test_planted_groups_are_minimal_conflicts():
    # cross-group background links may add further minimal conflicts, but
    # every planted group must survive as a subset-minimal conflict
    from diagseq.dpi import DPI

    for seed in (1, 2, 3, 4, 5):
        params = GeneratorParams(9, 4, 3, (2, 3), seed=seed)
        dpi = generate_dpi(params)
        planted = tt_minimal_conflicts(DPI(dpi.k))  # links removed: pure groups
        assert len(planted) == params.n_conflicts
        conflicts = tt_minimal_conflicts(dpi)
        assert planted <= conflicts


def test_generated_dpi_is_faulty_but_solvable():
    for seed in range(10):
        dpi = generate_dpi(GeneratorParams(10, 5, 2, (2, 4), seed=seed))
        all_k = list(dpi.k.formulas)
        assert not tt_satisfiable(all_k)  # K itself is inconsistent
        assert tt_minimal_diagnoses(dpi)  # yet some diagnosis exists


def test_seed_repeat_identical_text():
    params = GeneratorParams(20, 8, 4, (2, 5), seed=77)
    assert format_dpi(generate_dpi(params)) == format_dpi(generate_dpi(params))


def test_different_seeds_differ():
    a = generate_dpi(GeneratorParams(20, 8, 4, (2, 5), seed=1))
    b = generate_dpi(GeneratorParams(20, 8, 4, (2, 5), seed=2))
    assert format_dpi(a) != format_dpi(b)


def test_infeasible_params():
    with pytest.raises(InfeasibleParams):
        generate_dpi(GeneratorParams(3, 2, 1, (4, 4), seed=0))  # conflict larger than K
    with pytest.raises(InfeasibleParams):
        generate_dpi(GeneratorParams(5, 2, 0, (2, 2), seed=0))
    with pytest.raises(InfeasibleParams):
        generate_dpi(GeneratorParams(5, 1, 1, (2, 2), seed=0))
    with pytest.raises(InfeasibleParams):
        generate_dpi(GeneratorParams(5, 2, 1, (3, 2), seed=0))


def test_instantiate_fault_models_counts_and_seeds():
    dpi = generate_dpi(GeneratorParams(10, 5, 2, (2, 3), seed=3))
    eq_models = instantiate_fault_models(dpi, [DistKind.EQ], 3, master_seed=5)
    assert len(eq_models) == 3
    for fm in eq_models:
        assert len(set(fm.sc_probs.values())) == 1  # EQ constant over SC
    both = instantiate_fault_models(dpi, [DistKind.MOD, DistKind.STR], 3, master_seed=5)
    assert len(both) == 6
    seeds = [fm.spec.seed for fm in both]
    assert len(set(seeds)) == 6  # distinct across (kind, choice)


def test_instantiation_is_deterministic():
    dpi = generate_dpi(GeneratorParams(10, 5, 2, (2, 3), seed=3))
    a = instantiate_fault_models(dpi, [DistKind.STR], 2, master_seed=9)
    b = instantiate_fault_models(dpi, [DistKind.STR], 2, master_seed=9)
    assert [fm.ax_probs for fm in a] == [fm.ax_probs for fm in b]
