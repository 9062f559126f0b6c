"""Factorial experiment harness: run sessions over the full factor grid
(distribution bias x probability choice x oracle strategy x leading-
diagnoses count x measure) per DPI, deduplicate runs that converged to
an already-seen target, aggregate query counts, and derive the
comparison metrics (criticality overhead, within-slack best sets,
coefficient of variance).

Cells are embarrassingly parallel; every run's seed is a pure function
of (master seed, cell key, run index), and results are merged in
canonical cell order, so any worker count produces byte-identical CSVs.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .diagnosis import DiagnosisEngine
from .dpi import DPI
from .errors import InsufficientData, ZeroMean
from .oracle import STRATEGY_ORDER, OracleStrategy
from .probmodel import DistKind, FaultModel, build_fault_model, make_spec
from .qsm import MEASURE_ORDER, Measure
from .seeds import derive_seed
from .session import DEFAULT_MAX_QUERIES, SessionConfig, run_session

RUNS_CSV_COLUMNS = ("dpi", "measure", "dist", "prob_choice", "strategy", "ld",
                    "run", "seed", "n_queries", "n_distinct_target", "aborted",
                    "wall_ms", "target")
SCENARIO_CSV_COLUMNS = ("dpi", "measure", "dist", "strategy", "ld",
                        "mean_q", "min_q", "max_q", "n_runs")


@dataclass(frozen=True)
class CellKey:
    dpi: str
    measure: Measure
    dist: DistKind
    prob_choice: int
    strategy: OracleStrategy
    ld: int

    def parts(self) -> tuple:
        return (self.dpi, self.measure.value, self.dist.value, self.prob_choice,
                self.strategy.value, self.ld)


@dataclass(frozen=True)
class RunRecord:
    run: int
    seed: int
    n_queries: int
    aborted: bool
    wall_ms: float
    target: tuple[str, ...] | None
    kept: bool  # survived deduplication (first run reaching its target)


@dataclass
class ScenarioResult:
    cell: CellKey
    runs: list[RunRecord] = field(default_factory=list)

    @property
    def kept_counts(self) -> list[int]:
        return [r.n_queries for r in self.runs if r.kept]

    @property
    def n_distinct_targets(self) -> int:
        return sum(1 for r in self.runs if r.kept)

    @property
    def n_aborted(self) -> int:
        return sum(1 for r in self.runs if r.aborted)

    @property
    def mean_queries(self) -> float:
        counts = self.kept_counts
        return sum(counts) / len(counts) if counts else float("nan")


@dataclass
class FactorGrid:
    dpis: list[tuple[str, DPI]]
    measures: list[Measure] = field(default_factory=lambda: list(MEASURE_ORDER))
    dist_kinds: list[DistKind] = field(default_factory=lambda: [DistKind.EQ, DistKind.MOD, DistKind.STR])
    prob_choices: int = 3
    strategies: list[OracleStrategy] = field(default_factory=lambda: list(STRATEGY_ORDER))
    ld_values: list[int] = field(default_factory=lambda: [6, 10, 14])
    runs_per_cell: int = 20
    master_seed: int = 0
    max_queries: int = DEFAULT_MAX_QUERIES

    def __post_init__(self):
        if not (self.dpis and self.measures and self.dist_kinds and self.strategies and self.ld_values):
            raise ValueError("all factor lists must be nonempty")
        if self.runs_per_cell < 1 or self.prob_choices < 1:
            raise ValueError("runs_per_cell and prob_choices must be >= 1")

    def cells(self) -> list[CellKey]:
        out = []
        for name, _ in self.dpis:
            for measure in self.measures:
                for dist in self.dist_kinds:
                    for choice in range(self.prob_choices):
                        for strategy in self.strategies:
                            for ld in self.ld_values:
                                out.append(CellKey(name, measure, dist, choice, strategy, ld))
        return out


def fault_model_for(grid_seed: int, dpi_name: str, dpi: DPI, dist: DistKind, choice: int) -> FaultModel:
    # Probability choices are shared across measures/strategies/ld so the
    # measures compete on identical fault information.
    seed = derive_seed(grid_seed, "fault-model", dpi_name, dist.value, choice)
    return build_fault_model(dpi.k, make_spec(dist, seed))


def run_cell(grid: FactorGrid, cell: CellKey) -> ScenarioResult:
    dpi = dict(grid.dpis)[cell.dpi]
    fm = fault_model_for(grid.master_seed, cell.dpi, dpi, cell.dist, cell.prob_choice)
    seen_targets: set[tuple[str, ...]] = set()
    records: list[RunRecord] = []
    for run in range(grid.runs_per_cell):
        seed = derive_seed(grid.master_seed, *cell.parts(), run)
        config = SessionConfig(measure=cell.measure, ld=cell.ld, strategy=cell.strategy,
                               seed=seed, max_queries=grid.max_queries)
        try:
            result = run_session(dpi, fm, config, engine=DiagnosisEngine(dpi))
            aborted = result.aborted
            n_queries = result.n_queries
            wall_ms = result.wall_time * 1000.0
            target = result.target.sorted_labels() if result.target is not None else None
        except Exception:
            aborted, n_queries, wall_ms, target = True, 0, 0.0, None
        kept = (not aborted) and target is not None and target not in seen_targets
        if kept:
            seen_targets.add(target)
        records.append(RunRecord(run, seed, n_queries, aborted, wall_ms, target, kept))
    return ScenarioResult(cell, records)


def _run_cell_task(args) -> ScenarioResult:
    return run_cell(*args)


def run_grid(grid: FactorGrid, jobs: int = 1) -> list[ScenarioResult]:
    """All cells in canonical order; per-cell failures never abort the grid."""
    cells = grid.cells()
    if jobs <= 1:
        return [run_cell(grid, cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_cell_task, [(grid, cell) for cell in cells], chunksize=1))
    # map preserves submission order, which is already canonical
    return results


# -- comparison metrics ------------------------------------------------------


def criticality_overhead(cell_means: dict[Measure, float]) -> float:
    """Percentage overhead of the worst versus the best measure."""
    means = [m for m in cell_means.values() if m == m]  # drop NaNs
    if len(means) < 2:
        raise InsufficientData("need means for at least 2 measures")
    return (max(means) / min(means) - 1.0) * 100.0


@dataclass(frozen=True)
class BestQsmSet:
    members: tuple[Measure, ...]  # within slack of the best, in measure order
    strict: tuple[Measure, ...]   # the strict minimizer(s)


def best_qsm_set(cell_means: dict[Measure, float], slack: float = 0.03) -> BestQsmSet:
    if not cell_means:
        raise InsufficientData("empty means map")
    valid = {m: v for m, v in cell_means.items() if v == v}
    best = min(valid.values())
    members = tuple(m for m in MEASURE_ORDER if m in valid and valid[m] <= (1.0 + slack) * best)
    strict = tuple(m for m in MEASURE_ORDER if m in valid and valid[m] == best)
    return BestQsmSet(members, strict)


def scenario_cv(overheads) -> float:
    """Sample coefficient of variance, in percent."""
    values = list(overheads)
    if len(values) < 2:
        raise InsufficientData("need at least 2 values")
    mean = statistics.fmean(values)
    if mean == 0.0:
        raise ZeroMean("cannot divide by zero mean")
    return statistics.stdev(values) / mean * 100.0


# -- aggregation and reporting ------------------------------------------------


def pooled_means(results: list[ScenarioResult]) -> dict[tuple, dict[Measure, float]]:
    """Mean queries per measure for each scenario (dpi, strategy, dist),
    pooling deduplicated runs over probability choices and ld values."""
    buckets: dict[tuple, dict[Measure, list[int]]] = {}
    for r in results:
        key = (r.cell.dpi, r.cell.strategy, r.cell.dist)
        buckets.setdefault(key, {}).setdefault(r.cell.measure, []).extend(r.kept_counts)
    out: dict[tuple, dict[Measure, float]] = {}
    for key, per_measure in buckets.items():
        out[key] = {m: (sum(c) / len(c) if c else float("nan")) for m, c in per_measure.items()}
    return out


def write_results_csv(results: list[ScenarioResult], path, include_timings: bool = False) -> None:
    """Raw per-run log (all runs, including deduplicated and aborted ones).

    Timings are written as 0 unless include_timings is set: the CSVs are
    contracted to be byte-identical across reruns and worker counts, and
    wall-clock measurements would break that.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(RUNS_CSV_COLUMNS) + "\n")
        for r in results:
            n_distinct = r.n_distinct_targets
            for rec in r.runs:
                target = "" if rec.target is None else "|".join(rec.target)
                wall = f"{rec.wall_ms:.3f}" if include_timings else "0.000"
                row = r.cell.parts() + (rec.run, rec.seed, rec.n_queries, n_distinct,
                                        int(rec.aborted), wall, target)
                fh.write(",".join(str(v) for v in row) + "\n")


def write_scenario_csv(results: list[ScenarioResult], path) -> None:
    """Aggregated statistics, pooled over probability choices."""
    pooled: dict[tuple, list[int]] = {}
    for r in results:
        key = (r.cell.dpi, r.cell.measure, r.cell.dist, r.cell.strategy, r.cell.ld)
        pooled.setdefault(key, []).extend(r.kept_counts)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(SCENARIO_CSV_COLUMNS) + "\n")
        for key in sorted(pooled, key=lambda k: (k[0], k[1].value, k[2].value, k[3].value, k[4])):
            counts = pooled[key]
            dpi, measure, dist, strategy, ld = key
            if counts:
                stats = (f"{sum(counts) / len(counts):.6g}", min(counts), max(counts), len(counts))
            else:
                stats = ("nan", "", "", 0)
            row = (dpi, measure.value, dist.value, strategy.value, ld) + stats
            fh.write(",".join(str(v) for v in row) + "\n")


def read_scenario_csv(path) -> list[dict]:
    """Rows of the scenario CSV as dicts with typed statistics."""
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in SCENARIO_CSV_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"scenario CSV missing columns: {', '.join(missing)}")
        for row in reader:
            rows.append({
                "dpi": row["dpi"],
                "measure": Measure(row["measure"]),
                "dist": DistKind(row["dist"]),
                "strategy": OracleStrategy(row["strategy"]),
                "ld": int(row["ld"]),
                "mean_q": float(row["mean_q"]),
                "min_q": int(row["min_q"]) if row["min_q"] else None,
                "max_q": int(row["max_q"]) if row["max_q"] else None,
                "n_runs": int(row["n_runs"]),
            })
    return rows


def report_from_scenario_rows(rows: list[dict]) -> str:
    """Rebuild the markdown report from scenario CSV rows (means pooled
    over ld, weighted by run counts)."""
    buckets: dict[tuple, dict[Measure, list[tuple[float, int]]]] = {}
    for row in rows:
        key = (row["dpi"], row["strategy"], row["dist"])
        buckets.setdefault(key, {}).setdefault(row["measure"], []).append(
            (row["mean_q"], row["n_runs"]))
    means: dict[tuple, dict[Measure, float]] = {}
    for key, per_measure in buckets.items():
        out = {}
        for m, pairs in per_measure.items():
            total_runs = sum(n for _, n in pairs)
            out[m] = (sum(v * n for v, n in pairs) / total_runs) if total_runs else float("nan")
        means[key] = out

    dpis = sorted({row["dpi"] for row in rows})
    strategies = [s for s in STRATEGY_ORDER if any(row["strategy"] is s for row in rows)]
    dists = [d for d in (DistKind.EQ, DistKind.MOD, DistKind.STR)
             if any(row["dist"] is d for row in rows)]
    return _render_report(means, dpis, strategies, dists)


def format_report(results: list[ScenarioResult]) -> str:
    """Markdown report: criticality matrix (rows = DPIs, columns =
    strategy x dist) with best-measure sets, plus per-column CV."""
    means = pooled_means(results)
    dpis = sorted({r.cell.dpi for r in results})
    strategies = [s for s in STRATEGY_ORDER if any(r.cell.strategy is s for r in results)]
    dists = [d for d in (DistKind.EQ, DistKind.MOD, DistKind.STR)
             if any(r.cell.dist is d for r in results)]
    return _render_report(means, dpis, strategies, dists)


def _render_report(means, dpis, strategies, dists) -> str:
    columns = [(s, d) for s in strategies for d in dists]

    lines = ["# Query selection benchmark report", "", "## Criticality of measure choice",
             "", "Cell format: overhead% / best set (strict best starred).", ""]
    header = "| DPI | " + " | ".join(f"{s.value}/{d.value}" for s, d in columns) + " |"
    lines.append(header)
    lines.append("|" + "---|" * (len(columns) + 1))
    col_overheads: dict[tuple, list[float]] = {c: [] for c in columns}
    for dpi in dpis:
        cells = []
        for col in columns:
            s, d = col
            per_measure = means.get((dpi, s, d), {})
            valid = {m: v for m, v in per_measure.items() if v == v}
            if len(valid) < 2:
                cells.append("-")
                continue
            overhead = criticality_overhead(valid)
            col_overheads[col].append(overhead)
            best = best_qsm_set(valid)
            names = [f"{m.value}*" if m in best.strict else m.value for m in best.members]
            cells.append(f"{overhead:.0f}% / {','.join(names)}")
        lines.append(f"| {dpi} | " + " | ".join(cells) + " |")

    lines.append("")
    lines.append("## Coefficient of variance per column")
    lines.append("")
    for col in columns:
        s, d = col
        vals = col_overheads[col]
        if len(vals) >= 2:
            try:
                cv = f"{scenario_cv(vals):.1f}%"
            except ZeroMean:
                cv = "undefined (zero mean)"
        else:
            cv = "n/a (needs >= 2 DPIs)"
        lines.append(f"- {s.value}/{d.value}: {cv}")
    lines.append("")
    return "\n".join(lines)


def write_report(results: list[ScenarioResult], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_report(results))
