"""Shared domain types, search bounds, candidate encoding, and seeded RNG.

All optimizers in this package work on flat candidate vectors of length
``k * d`` (row-major over centroids, so coordinates of centroid 0 come
first).  The helpers here convert between the flat encoding and the
``(k, d)`` centroid matrix and keep every random draw on a single,
documented generator so runs are reproducible bit for bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np


class ConfigError(ValueError):
    """A run or experiment configuration value is invalid."""


class DataError(ValueError):
    """A dataset could not be loaded, parsed, or validated."""


@dataclass(frozen=True)
class Dataset:
    """A numeric dataset of ``n`` points with ``d`` features.

    ``labels`` holds the ground-truth class of each point (as strings) when
    the source file provides one; ``n_classes`` is the number of distinct
    labels.  Feature values are float64 and must be finite.
    """

    name: str
    points: np.ndarray
    labels: tuple | None = None
    n_classes: int = 0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DataError(f"dataset {self.name!r}: points must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(pts)):
            raise DataError(f"dataset {self.name!r}: non-finite feature value")
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != pts.shape[0]:
                raise DataError(
                    f"dataset {self.name!r}: {len(labels)} labels for {pts.shape[0]} points"
                )
            distinct = len(set(labels))
            object.__setattr__(self, "labels", labels)
            if self.n_classes == 0:
                object.__setattr__(self, "n_classes", distinct)
            elif distinct != self.n_classes:
                raise DataError(
                    f"dataset {self.name!r}: expected {self.n_classes} classes, found {distinct}"
                )

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def n_features(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class SearchBounds:
    """Per-feature lower/upper limits of the centroid search space."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("bounds must be two vectors of equal length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def tiled(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Bounds repeated ``k`` times, matching the flat candidate layout."""
        return np.tile(self.lower, k), np.tile(self.upper, k)


@dataclass(frozen=True)
class RunConfig:
    """Parameters of a single optimizer run."""

    k_clusters: int
    population_size: int = 60
    max_iterations: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.k_clusters < 1:
            raise ConfigError("k_clusters must be >= 1")
        if self.population_size < 1:
            raise ConfigError("population_size must be >= 1")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")


def make_rng(seed: int) -> np.random.Generator:
    """Seeded generator for one run.

    PCG64 is the pinned algorithm: the same seed yields the same draw
    sequence on every platform, and the generator is never shared between
    runs.
    """
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(master_seed: int, dataset: str, algorithm: str, run_index: int) -> int:
    """Pure 64-bit seed for one (dataset, algorithm, run) grid cell.

    Hashing the names keeps every cell's stream independent of grid order,
    so re-running a single cell reproduces its row exactly.
    """
    key = f"{master_seed}/{dataset}/{algorithm}/{run_index}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def bounds_from_dataset(dataset: Dataset) -> SearchBounds:
    """Per-feature min/max of the data, the centroid search region."""
    pts = dataset.points
    return SearchBounds(pts.min(axis=0), pts.max(axis=0))


def random_candidate(bounds: SearchBounds, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random ``(k, d)`` centroid matrix inside the bounds."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lam = rng.random((k, bounds.dim))
    return bounds.lower + (bounds.upper - bounds.lower) * lam


def clamp(candidate: np.ndarray, bounds: SearchBounds) -> np.ndarray:
    """Project every centroid coordinate into its feature's bounds."""
    cand = np.asarray(candidate, dtype=float)
    if cand.shape[-1] != bounds.dim:
        raise ValueError(
            f"candidate has {cand.shape[-1]} features, bounds have {bounds.dim}"
        )
    return np.clip(cand, bounds.lower, bounds.upper)


def flatten(centroids: np.ndarray) -> np.ndarray:
    """Row-major flattening of a ``(k, d)`` centroid matrix."""
    return np.asarray(centroids, dtype=float).reshape(-1)


def unflatten(flat: np.ndarray, k: int) -> np.ndarray:
    """Inverse of :func:`flatten`."""
    flat = np.asarray(flat, dtype=float)
    if flat.size % k != 0:
        raise ValueError(f"flat length {flat.size} is not a multiple of k={k}")
    return flat.reshape(k, -1)
