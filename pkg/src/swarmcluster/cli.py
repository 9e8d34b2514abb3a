"""Command-line benchmark runner.

Subcommands: run (one seeded run), bench (a full seeded grid with results,
summary, and convergence figures), stats (Friedman + post-hoc report over a
results file), plot (convergence curves from trace files), fetch (download
remote datasets into the cache), list (registered names).

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from pathlib import Path

import numpy as np

from .chaos import CHAOTIC_MAPS
from .core import ConfigError, DataError
from .data import (
    default_cache_dir,
    fetch_dataset,
    get_spec,
    load_dataset,
    load_registry,
)
from .runner import (
    ALGORITHMS,
    ExperimentConfig,
    RunRecord,
    execute_single,
    run_grid,
    score_table,
    summarize,
)
from .stats import friedman, posthoc_vs_control

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _suggest(name, options) -> str:
    close = difflib.get_close_matches(name, options, n=3)
    hint = f" (did you mean {', '.join(close)}?)" if close else ""
    return f"unknown name {name!r}; valid choices: {', '.join(sorted(options))}{hint}"


def _check_names(names, options):
    for name in names:
        if name not in options:
            raise UsageError(_suggest(name, tuple(options)))


def _write_trace(path: Path, trace) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["iteration,best_sicd"]
    lines += [f"{i + 1},{float(v)!r}" for i, v in enumerate(trace)]
    path.write_text("\n".join(lines) + "\n")


def read_trace(path: Path) -> np.ndarray:
    """Parse a two-column trace file back into its value sequence."""
    values = []
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].strip() != "iteration,best_sicd":
        raise DataError(f"{path}: missing 'iteration,best_sicd' header")
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        try:
            values.append(float(cells[1]))
        except (IndexError, ValueError):
            raise DataError(f"{path}: malformed trace row at line {lineno}") from None
    return np.array(values)


def _write_results(path: Path, records) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(RunRecord.CSV_FIELDS)]
    lines += [",".join(rec.csv_row()) for rec in records]
    path.write_text("\n".join(lines) + "\n")


def read_results(path: Path) -> list[RunRecord]:
    """Parse a results file back into records (round-trips what we write)."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0].split(",") != list(RunRecord.CSV_FIELDS):
        raise DataError(f"{path}: not a results file (bad header)")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(RunRecord.CSV_FIELDS):
            raise DataError(f"{path}: wrong column count at line {lineno}")
        try:
            records.append(RunRecord(
                dataset=cells[0], algorithm=cells[1], run_index=int(cells[2]),
                seed=int(cells[3]), best_sicd=float(cells[4]),
                error_rate_pct=float(cells[5]), iterations=int(cells[6]),
                evaluations=int(cells[7]), wall_time_ms=float(cells[8]),
            ))
        except ValueError:
            raise DataError(f"{path}: malformed value at line {lineno}") from None
    return records


def _load_named_dataset(args):
    registry = load_registry()
    _check_names([args.dataset], registry)
    spec = registry[args.dataset]
    dataset = load_dataset(
        spec, cache_dir=args.cache_dir, data_dir=args.data_dir,
        scale=getattr(args, "scale", False),
    )
    return spec, dataset


def cmd_run(args) -> int:
    _check_names([args.algo], ALGORITHMS)
    spec, dataset = _load_named_dataset(args)
    iterations = args.iters or spec.default_iterations
    record, trace = execute_single(
        dataset, args.algo,
        seed=args.seed,
        population=args.pop,
        iterations=iterations,
        k=args.k or spec.n_classes,
        chaos=args.chaos,
        objective=args.objective,
        strict_alg1=args.strict_alg1,
        use_gnda=not args.no_gnda,
        use_obl=not args.no_obl,
    )
    out_dir = Path(args.out_dir)
    trace_path = out_dir / "traces" / f"{record.dataset}_{record.algorithm}_seed{record.seed}.csv"
    _write_trace(trace_path, trace)
    results_path = out_dir / "results.csv"
    existing = read_results(results_path) if results_path.exists() else []
    _write_results(results_path, existing + [record])
    print(f"dataset={record.dataset} algo={record.algorithm} seed={record.seed}")
    print(f"best_sicd={record.best_sicd:.6f} error_rate={record.error_rate_pct:.2f}%")
    print(f"trace written to {trace_path}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise DataError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"config file is not valid JSON: {exc}") from exc
    registry = load_registry()
    config = ExperimentConfig(
        datasets=raw.get("datasets", ()),
        algorithms=raw.get("algorithms", ()),
        runs=raw.get("runs", 50),
        population=raw.get("population", 60),
        iterations=raw.get("iterations"),
        master_seed=raw.get("master_seed", 0),
        output_dir=raw.get("output_dir", "bench-out"),
        chaos=raw.get("chaos", "gauss"),
        objective=raw.get("objective", "distance"),
        scale=raw.get("scale", False),
        cache_dir=args.cache_dir,
        data_dir=args.data_dir,
    )
    _check_names(config.datasets, registry)
    _check_names([config.chaos], CHAOTIC_MAPS)

    def progress(record, error):
        status = f"FAILED: {error}" if error else f"best_sicd={record.best_sicd:.6f}"
        print(f"[{record.dataset}/{record.algorithm}/run{record.run_index}] {status}")

    records, traces, failures = run_grid(config, jobs=args.jobs, progress=progress)

    out_dir = Path(config.output_dir)
    _write_results(out_dir / "results.csv", records)
    for (ds, algo, run), trace in traces.items():
        _write_trace(out_dir / "traces" / f"{ds}_{algo}_run{run}.csv", trace)

    summary = summarize(records)
    header = ("dataset", "algorithm", "runs", "best_sicd", "mean_sicd",
              "worst_sicd", "std_sicd", "mean_error_rate_pct")
    lines = [",".join(header)]
    for row in summary:
        lines.append(",".join(
            str(row[h]) if h in ("dataset", "algorithm", "runs") else repr(float(row[h]))
            for h in header
        ))
    (out_dir / "summary.csv").write_text("\n".join(lines) + "\n")

    # one convergence figure per dataset, mean curve per algorithm
    from .plotting import convergence_plot

    for ds in config.datasets:
        curves = []
        for algo in config.algorithms:
            runs = [traces[key] for key in traces if key[0] == ds and key[1] == algo]
            if runs:
                shortest = min(len(t) for t in runs)
                curves.append((algo, np.mean([t[:shortest] for t in runs], axis=0)))
        if curves:
            convergence_plot(
                curves, out_dir / "figures" / f"{ds}_convergence.svg",
                title=f"{ds}: mean best-so-far objective",
            )

    print(f"\n{len(records)} runs -> {out_dir / 'results.csv'}")
    print(f"summary -> {out_dir / 'summary.csv'}; figures -> {out_dir / 'figures'}")
    for ds, algo, run, err in failures:
        print(f"warning: {ds}/{algo}/run{run} failed: {err}", file=sys.stderr)
    return EXIT_OK


def cmd_stats(args) -> int:
    records = read_results(Path(args.results))
    table = score_table(records, metric=args.metric)
    result = friedman(table, alpha=args.alpha)
    control = args.control or table.algorithms[
        int(np.argmin(result.average_ranks))
    ]
    if control not in table.algorithms:
        raise UsageError(_suggest(control, table.algorithms))
    rows = posthoc_vs_control(result, control, holm=args.holm)

    print(f"metric: {args.metric}  datasets: {len(table.datasets)}  "
          f"algorithms: {len(table.algorithms)}")
    print("\naverage ranks:")
    for name, ar in sorted(zip(result.algorithms, result.average_ranks), key=lambda p: p[1]):
        print(f"  {name:<12} {ar:.4f}")
    verdict = "rejected" if result.rejected else "not rejected"
    print(f"\nFriedman chi-square = {result.statistic:.4f}  "
          f"p = {result.p_value:.3g}  (H0 {verdict} at alpha={result.alpha})")
    print(f"\npost-hoc vs control {control!r}"
          + (" (Holm-corrected)" if args.holm else "") + ":")
    for row in rows:
        flag = "rejected" if row.rejected else "not rejected"
        print(f"  {control} vs {row.algorithm:<12} z = {row.z:+.4f}  "
              f"p = {row.p_value:.3g}  {flag}")

    report = {
        "metric": args.metric,
        "alpha": result.alpha,
        "average_ranks": dict(zip(result.algorithms, map(float, result.average_ranks))),
        "friedman_statistic": result.statistic,
        "p_value": result.p_value,
        "null_hypothesis_rejected": result.rejected,
        "control": control,
        "holm": bool(args.holm),
        "posthoc": [
            {"algorithm": r.algorithm, "z": r.z, "p_value": r.p_value, "rejected": r.rejected}
            for r in rows
        ],
    }
    out = Path(args.out) if args.out else Path(args.results).with_name(
        f"stats_{args.metric}.json"
    )
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report, indent=2) + "\n")
    print(f"\nreport -> {out}")
    return EXIT_OK


def cmd_plot(args) -> int:
    from .plotting import convergence_plot

    curves = [(Path(p).stem, read_trace(Path(p))) for p in args.traces]
    out = convergence_plot(curves, Path(args.out), title=args.title)
    print(f"figure -> {out}")
    return EXIT_OK


def cmd_fetch(args) -> int:
    registry = load_registry()
    if args.all:
        names = [n for n, s in registry.items() if s.source_kind == "remote"]
    else:
        if not args.dataset:
            raise UsageError("fetch needs --dataset NAME or --all")
        _check_names([args.dataset], registry)
        names = [args.dataset]
    for name in names:
        path = fetch_dataset(name, cache_dir=args.cache_dir)
        print(f"{name} -> {path}")
    return EXIT_OK


def cmd_list(args) -> int:
    registry = load_registry()
    print("datasets:")
    for name, spec in sorted(registry.items()):
        try:
            load_dataset(spec, cache_dir=args.cache_dir, data_dir=args.data_dir)
            status = "available"
        except DataError:
            status = f"not fetched ({spec.source_kind})"
        exp = spec.expected
        print(f"  {name:<12} {exp.get('n_instances', '?'):>5} x {exp.get('n_features', '?'):>2}  "
              f"k={exp.get('n_classes', '?')}  [{status}]")
    print("\nalgorithms:", ", ".join(ALGORITHMS))
    print("chaotic maps:", ", ".join(sorted(CHAOTIC_MAPS)))
    return EXIT_OK


def _add_common(p):
    p.add_argument("--cache-dir", default=None,
                   help=f"dataset cache directory (default {default_cache_dir()})")
    p.add_argument("--data-dir", default=None,
                   help="directory with manually supplied dataset files")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swarmcluster", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one seeded run of one algorithm on one dataset")
    p_run.add_argument("--algo", required=True)
    p_run.add_argument("--dataset", required=True)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--pop", type=int, default=60)
    p_run.add_argument("--iters", type=int, default=None,
                       help="iteration budget (default: dataset-specific)")
    p_run.add_argument("--k", type=int, default=None,
                       help="cluster count (default: the dataset's class count)")
    p_run.add_argument("--chaos", default="gauss", choices=sorted(CHAOTIC_MAPS))
    p_run.add_argument("--objective", default="distance", choices=("distance", "squared"))
    p_run.add_argument("--strict-alg1", action="store_true",
                       help="use the literal |a|-branch of the chimp pseudocode")
    p_run.add_argument("--no-gnda", action="store_true",
                       help="hybrid ablation: skip the normal-model sweep")
    p_run.add_argument("--no-obl", action="store_true",
                       help="hybrid ablation: skip all opposition steps")
    p_run.add_argument("--scale", action="store_true", help="min-max scale features")
    p_run.add_argument("--out-dir", default="swarmcluster-out")
    _add_common(p_run)
    p_run.set_defaults(handler=cmd_run)

    p_bench = sub.add_parser("bench", help="run a dataset x algorithm x runs grid")
    p_bench.add_argument("--config", required=True, help="JSON experiment config")
    p_bench.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_common(p_bench)
    p_bench.set_defaults(handler=cmd_bench)

    p_stats = sub.add_parser("stats", help="Friedman + post-hoc over a results file")
    p_stats.add_argument("--results", required=True)
    p_stats.add_argument("--metric", default="sicd", choices=("sicd", "er"))
    p_stats.add_argument("--control", default=None,
                         help="control algorithm (default: best average rank)")
    p_stats.add_argument("--alpha", type=float, default=0.05)
    p_stats.add_argument("--holm", action="store_true", help="Holm correction")
    p_stats.add_argument("--out", default=None, help="report path (JSON)")
    p_stats.set_defaults(handler=cmd_stats)

    p_plot = sub.add_parser("plot", help="render convergence curves from trace files")
    p_plot.add_argument("traces", nargs="+", help="trace files from run/bench")
    p_plot.add_argument("--out", required=True, help="output image (.svg recommended)")
    p_plot.add_argument("--title", default=None)
    p_plot.set_defaults(handler=cmd_plot)

    p_fetch = sub.add_parser("fetch", help="download remote datasets into the cache")
    p_fetch.add_argument("--dataset", default=None)
    p_fetch.add_argument("--all", action="store_true")
    p_fetch.add_argument("--cache-dir", default=None)
    p_fetch.set_defaults(handler=cmd_fetch)

    p_list = sub.add_parser("list", help="registered datasets, algorithms, chaotic maps")
    _add_common(p_list)
    p_list.set_defaults(handler=cmd_list)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
