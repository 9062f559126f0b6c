"""Command-line entry point.

Subcommands:
    gen      generate solvable DPI files plus a manifest CSV
    session  run one sequential diagnosis session on a DPI file
    bench    run a factor grid, writing runs CSV, scenario CSV and report
    report   rebuild the markdown report from a scenario CSV

All randomness flows from explicit seeds; exit codes: 0 success,
1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from .diagnosis import DiagnosisEngine
from .dpi import load_dpi, save_dpi
from .generator import GeneratorParams, generate_dpi
from .oracle import parse_strategy
from .probmodel import build_fault_model, make_spec, parse_dist_kind
from .qsm import parse_measure
from .seeds import derive_seed
from .session import SessionConfig, run_session


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="diagseq", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate DPI files")
    gen.add_argument("--axioms", type=int, default=30)
    gen.add_argument("--atoms", type=int, default=12)
    gen.add_argument("--conflicts", type=int, default=4)
    gen.add_argument("--min-size", type=int, default=3)
    gen.add_argument("--max-size", type=int, default=6)
    gen.add_argument("--count", type=int, default=1, help="number of DPIs to generate")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True, help="output directory")

    ses = sub.add_parser("session", help="run one diagnosis session")
    ses.add_argument("--dpi", required=True)
    ses.add_argument("--measure", required=True)
    ses.add_argument("--dist", required=True, help="fault distribution: eq, mod or str")
    ses.add_argument("--oracle", required=True, help="plausible, random or implausible")
    ses.add_argument("--ld", type=int, default=10)
    ses.add_argument("--seed", type=int, required=True)
    ses.add_argument("--max-queries", type=int, default=200)
    ses.add_argument("--trace", action="store_true")

    ben = sub.add_parser("bench", help="run a factor grid")
    ben.add_argument("--config", help="flat key = value config file")
    ben.add_argument("--dpis", nargs="*", help="DPI file paths")
    ben.add_argument("--measures", help="comma-separated measure names")
    ben.add_argument("--dists", help="comma-separated distribution kinds")
    ben.add_argument("--strategies", help="comma-separated oracle strategies")
    ben.add_argument("--ld", help="comma-separated leading-diagnoses counts")
    ben.add_argument("--prob-choices", type=int)
    ben.add_argument("--runs", type=int, help="runs per cell")
    ben.add_argument("--max-queries", type=int)
    ben.add_argument("--master-seed", type=int)
    ben.add_argument("--jobs", type=int, default=None)
    ben.add_argument("--timings", action="store_true",
                     help="record wall-clock times in the runs CSV (breaks byte-identical output)")
    ben.add_argument("--out", required=True, help="output directory")

    rep = sub.add_parser("report", help="rebuild report from a scenario CSV")
    rep.add_argument("--scenario", required=True)
    rep.add_argument("--out", required=True, help="output markdown file")
    return parser


def _cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = ["name,axioms,atoms,conflicts,min_size,max_size,seed"]
    for i in range(args.count):
        seed = derive_seed(args.seed, "gen", i)
        params = GeneratorParams(args.axioms, args.atoms, args.conflicts,
                                 (args.min_size, args.max_size), seed)
        dpi = generate_dpi(params)
        name = f"dpi_{args.seed}_{i:03d}"
        save_dpi(dpi, out / f"{name}.dpi")
        manifest.append(f"{name},{args.axioms},{args.atoms},{args.conflicts},"
                        f"{args.min_size},{args.max_size},{seed}")
    (out / "manifest.csv").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    print(f"wrote {args.count} DPI file(s) and manifest.csv to {out}")
    return 0


def _cmd_session(args) -> int:
    dpi = load_dpi(args.dpi)
    dist = parse_dist_kind(args.dist)
    fm = build_fault_model(dpi.k, make_spec(dist, derive_seed(args.seed, "fault-model")))
    config = SessionConfig(
        measure=parse_measure(args.measure),
        ld=args.ld,
        strategy=parse_strategy(args.oracle),
        seed=args.seed,
        max_queries=args.max_queries,
    )
    result = run_session(dpi, fm, config, engine=DiagnosisEngine(dpi))
    if args.trace:
        print("step,query_id,x,answer,leading,eliminated")
        for step in result.trace:
            print(step.format())
    status = "aborted" if result.aborted else "done"
    target = str(result.target) if result.target is not None else "-"
    print(f"{status}: n_queries={result.n_queries} target={target} "
          f"wall={result.wall_time:.3f}s")
    return 0


def _parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _split(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def _cmd_bench(args) -> int:
    cfg = _parse_config_file(args.config) if args.config else {}

    def setting(flag_value, key, default=None):
        if flag_value is not None:
            return flag_value
        return cfg.get(key, default)

    dpi_paths = args.dpis if args.dpis else _split(cfg.get("dpis", ""))
    if not dpi_paths:
        raise UsageError("no DPI files given (use --dpis or 'dpis =' in the config)")
    dpis = [(Path(p).stem, load_dpi(p)) for p in dpi_paths]

    measures = [parse_measure(m) for m in _split(setting(args.measures, "measures", "ent,spl,kl,emcb,mps,bme,rio,rnd"))]
    dists = [parse_dist_kind(d) for d in _split(setting(args.dists, "dists", "eq,mod,str"))]
    strategies = [parse_strategy(s) for s in _split(setting(args.strategies, "strategies", "plausible,random,implausible"))]
    ld_values = [int(v) for v in _split(str(setting(args.ld, "ld", "6,10,14")))]
    grid = bench_mod.FactorGrid(
        dpis=dpis,
        measures=measures,
        dist_kinds=dists,
        prob_choices=int(setting(args.prob_choices, "prob_choices", 3)),
        strategies=strategies,
        ld_values=ld_values,
        runs_per_cell=int(setting(args.runs, "runs", 20)),
        master_seed=int(setting(args.master_seed, "master_seed", 0)),
        max_queries=int(setting(args.max_queries, "max_queries", 200)),
    )
    jobs = args.jobs
    if jobs is None:
        jobs = int(cfg.get("jobs", os.environ.get("DIAGSEQ_JOBS", "1")))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    results = bench_mod.run_grid(grid, jobs=jobs)
    bench_mod.write_results_csv(results, out / "runs.csv", include_timings=args.timings)
    bench_mod.write_scenario_csv(results, out / "scenarios.csv")
    bench_mod.write_report(results, out / "report.md")
    print(f"wrote runs.csv, scenarios.csv and report.md to {out}")
    return 0


def _cmd_report(args) -> int:
    rows = bench_mod.read_scenario_csv(args.scenario)
    Path(args.out).write_text(bench_mod.report_from_scenario_rows(rows), encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {"gen": _cmd_gen, "session": _cmd_session, "bench": _cmd_bench, "report": _cmd_report}


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # runtime failure
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
