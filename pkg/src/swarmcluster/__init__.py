"""Swarm-intelligence data clustering toolkit.

Centroid-based clustering as continuous optimization: two chimp-optimizer
variants driven by chaotic maps, a generalized-normal-distribution
optimizer, opposition-based learning, and the ChOAGNDA hybrid of all
three, next to a plain k-means baseline.  A benchmark CLI runs seeded
experiment grids and the accompanying rank statistics.
"""

from .chaos import CHAOTIC_MAPS, ChaoticMap, chaotic_next, chaotic_sequence
from .choa import ChoaState, OptimizerResult, choa_run, coefficient_f
from .core import (
    ConfigError,
    DataError,
    Dataset,
    RunConfig,
    SearchBounds,
    bounds_from_dataset,
    clamp,
    derive_seed,
    make_rng,
    random_candidate,
)
from .data import DatasetSpec, fetch_remote, load_dataset, load_registry, min_max_scale
from .gnda import gnda_run
from .hybrid import HybridResult, PhaseLogEntry, choagnda_run
from .kmeans import KMeansResult, kmeans_run
from .objective import assign_points, error_rate, euclidean_distance, sicd
from .obl import opposed_init, opposite, selective_opposition
from .runner import ALGORITHMS, ExperimentConfig, RunRecord, execute_single, run_grid
from .stats import FriedmanResult, ScoreTable, friedman, posthoc_vs_control, rank_rows

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "CHAOTIC_MAPS",
    "ChaoticMap",
    "ChoaState",
    "ConfigError",
    "DataError",
    "Dataset",
    "DatasetSpec",
    "ExperimentConfig",
    "FriedmanResult",
    "HybridResult",
    "KMeansResult",
    "OptimizerResult",
    "PhaseLogEntry",
    "RunConfig",
    "RunRecord",
    "ScoreTable",
    "SearchBounds",
    "assign_points",
    "bounds_from_dataset",
    "choa_run",
    "choagnda_run",
    "chaotic_next",
    "chaotic_sequence",
    "clamp",
    "coefficient_f",
    "derive_seed",
    "error_rate",
    "euclidean_distance",
    "execute_single",
    "fetch_remote",
    "friedman",
    "gnda_run",
    "kmeans_run",
    "load_dataset",
    "load_registry",
    "make_rng",
    "min_max_scale",
    "opposed_init",
    "opposite",
    "posthoc_vs_control",
    "random_candidate",
    "rank_rows",
    "run_grid",
    "selective_opposition",
    "sicd",
]
