"""Single-run execution and the seeded benchmark grid.

One grid cell = (dataset, algorithm, run index).  Each cell derives its own
seed from the master seed and the cell names, so any cell can be re-run in
isolation and reproduce its row.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .choa import choa_run
from .core import ConfigError, DataError, Dataset, RunConfig, derive_seed
from .data import load_dataset
from .gnda import gnda_run
from .hybrid import choagnda_run
from .kmeans import kmeans_run
from .objective import assign_points, error_rate
from .stats import ScoreTable

ALGORITHMS = ("choa1", "choa2", "gnda", "choagnda", "kmeans")


@dataclass
class RunRecord:
    """One row of a results file (plus the trace, kept separately)."""

    dataset: str
    algorithm: str
    run_index: int
    seed: int
    best_sicd: float
    error_rate_pct: float
    iterations: int
    evaluations: int
    wall_time_ms: float

    CSV_FIELDS = (
        "dataset", "algorithm", "run", "seed", "best_sicd",
        "error_rate_pct", "iterations", "evaluations", "wall_time_ms",
    )

    def csv_row(self, include_time: bool = True) -> list[str]:
        row = [
            self.dataset,
            self.algorithm,
            str(self.run_index),
            str(self.seed),
            repr(float(self.best_sicd)),
            repr(float(self.error_rate_pct)),
            str(self.iterations),
            str(self.evaluations),
        ]
        if include_time:
            row.append(repr(float(self.wall_time_ms)))
        return row


def execute_single(
    dataset: Dataset,
    algorithm: str,
    seed: int,
    population: int,
    iterations: int,
    k: int,
    run_index: int = 0,
    chaos: str = "gauss",
    objective: str = "distance",
    strict_alg1: bool = False,
    use_gnda: bool = True,
    use_obl: bool = True,
) -> tuple[RunRecord, np.ndarray]:
    """Run one algorithm once; returns the record and the best-so-far trace."""
    if algorithm not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    start = time.perf_counter()
    if algorithm == "kmeans":
        km = kmeans_run(dataset, k, seed, max_iters=iterations)
        assignment = km.assignment
        trace = np.minimum.accumulate(km.sicd_history)
        best = float(trace[-1])
        iters_used = km.iterations_used
        evaluations = len(km.sicd_history)
    else:
        config = RunConfig(
            k_clusters=k, population_size=population, max_iterations=iterations, seed=seed
        )
        if algorithm in ("choa1", "choa2"):
            result = choa_run(
                dataset, config, version="I" if algorithm == "choa1" else "II",
                chaos_kind=chaos, objective=objective, strict_alg1=strict_alg1,
            )
            assignment = assign_points(dataset, result.centroids)
        elif algorithm == "gnda":
            result = gnda_run(dataset, config, objective=objective)
            assignment = assign_points(dataset, result.centroids)
        else:
            result, assignment = choagnda_run(
                dataset, config, use_gnda=use_gnda, use_obl=use_obl, objective=objective
            )
        trace = result.trace
        best = float(result.best_fitness)
        iters_used = iterations
        evaluations = result.evaluations
    er = error_rate(dataset, assignment) if dataset.labels is not None else float("nan")
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    record = RunRecord(
        dataset=dataset.name,
        algorithm=algorithm,
        run_index=run_index,
        seed=seed,
        best_sicd=best,
        error_rate_pct=er,
        iterations=iters_used,
        evaluations=evaluations,
        wall_time_ms=elapsed_ms,
    )
    return record, trace


@dataclass
class ExperimentConfig:
    """A benchmark grid: datasets x algorithms x seeded runs."""

    datasets: tuple
    algorithms: tuple
    runs: int = 50
    population: int = 60
    iterations: int | None = None  # None: per-dataset default budget
    master_seed: int = 0
    output_dir: str = "bench-out"
    chaos: str = "gauss"
    objective: str = "distance"
    scale: bool = False
    cache_dir: str | None = None
    data_dir: str | None = None

    def __post_init__(self):
        self.datasets = tuple(self.datasets)
        self.algorithms = tuple(self.algorithms)
        if not self.datasets:
            raise ConfigError("experiment needs at least one dataset")
        if not self.algorithms:
            raise ConfigError("experiment needs at least one algorithm")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")


def _execute_cell(payload: dict):
    """Worker-pool entry: load the dataset and run one grid cell."""
    from .data import get_spec  # local import keeps workers light

    spec = get_spec(payload["dataset"])
    dataset = load_dataset(
        spec, cache_dir=payload["cache_dir"], data_dir=payload["data_dir"],
        scale=payload["scale"],
    )
    iterations = payload["iterations"] or spec.default_iterations
    record, trace = execute_single(
        dataset,
        payload["algorithm"],
        seed=payload["seed"],
        population=payload["population"],
        iterations=iterations,
        k=spec.n_classes,
        run_index=payload["run_index"],
        chaos=payload["chaos"],
        objective=payload["objective"],
    )
    return record, trace


def run_grid(config: ExperimentConfig, jobs: int = 1, progress=None):
    """Execute the full grid; returns (records, traces, failures).

    A failing cell is recorded with NaN metrics instead of aborting the
    grid.  Rows come back sorted by (dataset, algorithm, run).
    """
    cells = []
    for ds in config.datasets:
        for algo in config.algorithms:
            for run in range(config.runs):
                cells.append({
                    "dataset": ds,
                    "algorithm": algo,
                    "run_index": run,
                    "seed": derive_seed(config.master_seed, ds, algo, run),
                    "population": config.population,
                    "iterations": config.iterations,
                    "chaos": config.chaos,
                    "objective": config.objective,
                    "scale": config.scale,
                    "cache_dir": config.cache_dir,
                    "data_dir": config.data_dir,
                })

    records, traces, failures = [], {}, []

    def commit(cell, outcome, error=None):
        if error is None:
            record, trace = outcome
            traces[(record.dataset, record.algorithm, record.run_index)] = trace
        else:
            failures.append((cell["dataset"], cell["algorithm"], cell["run_index"], error))
            record = RunRecord(
                dataset=cell["dataset"], algorithm=cell["algorithm"],
                run_index=cell["run_index"], seed=cell["seed"],
                best_sicd=float("nan"), error_rate_pct=float("nan"),
                iterations=0, evaluations=0, wall_time_ms=0.0,
            )
        records.append(record)
        if progress is not None:
            progress(record, error)

    if jobs <= 1:
        for cell in cells:
            try:
                commit(cell, _execute_cell(cell))
            except Exception as exc:  # noqa: BLE001 - cell isolation is the point
                commit(cell, None, error=str(exc))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [(cell, pool.submit(_execute_cell, cell)) for cell in cells]
            for cell, future in futures:
                try:
                    commit(cell, future.result())
                except Exception as exc:  # noqa: BLE001
                    commit(cell, None, error=str(exc))

    records.sort(key=lambda r: (r.dataset, r.algorithm, r.run_index))
    return records, traces, failures


def summarize(records) -> list[dict]:
    """Best/mean/worst/sample-STD of SICD per (dataset, algorithm) cell."""
    groups = {}
    for rec in records:
        groups.setdefault((rec.dataset, rec.algorithm), []).append(rec)
    rows = []
    for (ds, algo), recs in sorted(groups.items()):
        sicds = np.array([r.best_sicd for r in recs], dtype=float)
        ers = np.array([r.error_rate_pct for r in recs], dtype=float)
        ok = sicds[np.isfinite(sicds)]
        rows.append({
            "dataset": ds,
            "algorithm": algo,
            "runs": len(recs),
            "best_sicd": float(ok.min()) if ok.size else float("nan"),
            "mean_sicd": float(ok.mean()) if ok.size else float("nan"),
            "worst_sicd": float(ok.max()) if ok.size else float("nan"),
            "std_sicd": float(ok.std(ddof=1)) if ok.size > 1 else 0.0,
            "mean_error_rate_pct": float(np.nanmean(ers)) if np.isfinite(ers).any() else float("nan"),
        })
    return rows


def score_table(records, metric: str = "sicd") -> ScoreTable:
    """Per-cell mean metric matrix for the statistics commands.

    Requires a complete grid: every (dataset, algorithm) pair must have at
    least one finite value.
    """
    if metric not in ("sicd", "er"):
        raise ConfigError(f"unknown metric {metric!r}; choose sicd or er")
    datasets = sorted({r.dataset for r in records})
    algorithms = sorted({r.algorithm for r in records})
    cells = {}
    for rec in records:
        value = rec.best_sicd if metric == "sicd" else rec.error_rate_pct
        if np.isfinite(value):
            cells.setdefault((rec.algorithm, rec.dataset), []).append(value)
    missing = [
        (a, d) for a in algorithms for d in datasets if not cells.get((a, d))
    ]
    if missing:
        pairs = ", ".join(f"{a}x{d}" for a, d in missing)
        raise DataError(f"results grid is incomplete; missing cells: {pairs}")
    scores = np.array([
        [float(np.mean(cells[(a, d)])) for d in datasets] for a in algorithms
    ])
    return ScoreTable(algorithms=tuple(algorithms), datasets=tuple(datasets), scores=scores)
