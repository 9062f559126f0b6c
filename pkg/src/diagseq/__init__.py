"""Sequential model-based diagnosis with query-selection heuristics.

The package covers the full pipeline: propositional DPIs and reasoning,
minimal conflicts and probability-ordered leading diagnoses, fault
models, q-partitions, eight query-selection measures, simulated
oracles, sequential diagnosis sessions, and a factorial benchmark
harness with reporting.
"""

from .bench import (BestQsmSet, CellKey, FactorGrid, ScenarioResult, best_qsm_set,
                    criticality_overhead, run_grid, scenario_cv, write_report,
                    write_results_csv, write_scenario_csv)
from .diagnosis import (Conflict, Diagnosis, DiagnosisEngine, count_minimal_diagnoses_up_to,
                        is_valid_diagnosis, leading_diagnoses, minimal_conflict)
from .dpi import DPI, SentenceSet, format_dpi, load_dpi, parse_dpi_text, save_dpi
from .errors import (DiagseqError, DuplicateLabel, EmptyPool, InfeasibleParams,
                     InsufficientData, InvalidPartition, MissingRioState,
                     MissingSection, MissingSubComponent, ParseError, ResourceLimit,
                     UnknownLabel, Unsolvable, ZeroMass, ZeroMean)
from .formula import (FALSE, TRUE, And, Atom, Const, Formula, Iff, Implies, Not, Or,
                      format_formula, parse_formula)
from .generator import GeneratorParams, generate_dpi, instantiate_fault_models
from .oracle import OracleStrategy, classify, parse_strategy
from .probmodel import (DiagnosisBelief, DistKind, DistributionSpec, FaultModel,
                        axiom_fault_prob, bayes_update, build_fault_model,
                        diagnosis_prior, extract_subcomponents, generate_distribution,
                        make_spec, normalize, parse_dist_kind)
from .qsm import (Measure, RioState, evaluate_measure, init_rio_state, parse_measure,
                  select_query, update_rio_state)
from .query import (QPartition, Query, candidate_pool, compute_qpartition, is_strong,
                    negative_class_prob, positive_class_prob)
from .reasoner import Reasoner, entails, is_consistent
from .seeds import derive_seed
from .session import SessionConfig, SessionResult, TraceStep, run_session

__version__ = "0.1.0"
