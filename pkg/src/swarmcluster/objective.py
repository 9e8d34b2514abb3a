"""Clustering objective: distances, nearest-centroid assignment, SICD, and
the error rate under the optimal cluster-to-class matching."""

from __future__ import annotations

from itertools import permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Dataset

# Brute-force matching is exact and fast enough up to this many clusters;
# larger instances go through the assignment-problem solver.
_BRUTE_FORCE_MAX_K = 8


def euclidean_distance(a, b) -> float:
    """Euclidean distance between two equal-length vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(((a - b) ** 2).sum()))


def pairwise_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """``(n, k)`` matrix of point-to-centroid Euclidean distances."""
    diff = points[:, None, :] - centroids[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def assign_points(dataset: Dataset, centroids: np.ndarray) -> np.ndarray:
    """Nearest-centroid index per point; ties go to the lowest index."""
    centroids = np.atleast_2d(np.asarray(centroids, dtype=float))
    if centroids.shape[1] != dataset.n_features:
        raise ValueError(
            f"centroids have {centroids.shape[1]} features, dataset has {dataset.n_features}"
        )
    # argmin returns the first (lowest-index) minimizer, which is the tie rule.
    return pairwise_distances(dataset.points, centroids).argmin(axis=1)


def sicd(dataset: Dataset, centroids: np.ndarray, mode: str = "distance") -> float:
    """Sum of intra-cluster distances: each point's distance to its nearest
    centroid, summed over the dataset (lower is better).

    ``mode="squared"`` sums squared distances instead; the default matches
    the magnitudes reported for the standard benchmark datasets.
    """
    centroids = np.atleast_2d(np.asarray(centroids, dtype=float))
    if centroids.shape[1] != dataset.n_features:
        raise ValueError(
            f"centroids have {centroids.shape[1]} features, dataset has {dataset.n_features}"
        )
    nearest = pairwise_distances(dataset.points, centroids).min(axis=1)
    if mode == "distance":
        return float(nearest.sum())
    if mode == "squared":
        return float((nearest**2).sum())
    raise ValueError(f"unknown objective mode {mode!r}")


class FitnessFunction:
    """SICD of a flat candidate vector, with an evaluation counter.

    Optimizers call instances of this class; the counter feeds the
    ``evaluations`` column of run records.
    """

    def __init__(self, dataset: Dataset, k: int, mode: str = "distance"):
        self.dataset = dataset
        self.k = k
        self.mode = mode
        self.evaluations = 0

    def __call__(self, flat: np.ndarray) -> float:
        self.evaluations += 1
        return sicd(self.dataset, np.asarray(flat, dtype=float).reshape(self.k, -1), self.mode)


def _contingency(true_labels, cluster_labels, k: int) -> tuple[np.ndarray, list]:
    classes = sorted(set(true_labels))
    index = {c: i for i, c in enumerate(classes)}
    table = np.zeros((k, len(classes)), dtype=int)
    for cl, tl in zip(cluster_labels, true_labels):
        table[cl, index[tl]] += 1
    return table, classes


def _matched_bruteforce(table: np.ndarray) -> tuple[int, dict]:
    """Max matched count over injective cluster->class maps, by enumeration."""
    k, c = table.shape
    best, best_map = -1, {}
    if k <= c:
        for perm in permutations(range(c), k):
            got = sum(table[i, perm[i]] for i in range(k))
            if got > best:
                best, best_map = got, {i: perm[i] for i in range(k)}
    else:
        for perm in permutations(range(k), c):
            got = sum(table[perm[j], j] for j in range(c))
            if got > best:
                best, best_map = got, {perm[j]: j for j in range(c)}
    return best, best_map


def _matched_assignment(table: np.ndarray) -> tuple[int, dict]:
    """Same optimum via the assignment-problem solver."""
    rows, cols = linear_sum_assignment(-table)
    return int(table[rows, cols].sum()), dict(zip(rows.tolist(), cols.tolist()))


def best_label_mapping(true_labels, cluster_labels, k: int) -> tuple[dict, int]:
    """Optimal injective map from cluster index to class label.

    Returns the map and the misclassified count under it.  The map is
    injective on the smaller of (clusters, classes); points in unmatched
    clusters count as misclassified.
    """
    table, classes = _contingency(true_labels, cluster_labels, k)
    if k <= _BRUTE_FORCE_MAX_K:
        matched, raw = _matched_bruteforce(table)
    else:
        matched, raw = _matched_assignment(table)
    mapping = {cl: classes[ci] for cl, ci in raw.items()}
    return mapping, len(true_labels) - matched


def error_rate(dataset: Dataset, assignment: np.ndarray) -> float:
    """Percentage of points misclassified under the best cluster-to-class map."""
    if dataset.labels is None:
        raise ValueError(f"dataset {dataset.name!r} has no ground-truth labels")
    assignment = np.asarray(assignment)
    if assignment.shape[0] != dataset.n_points:
        raise ValueError("assignment length does not match dataset")
    k = int(assignment.max()) + 1
    _, wrong = best_label_mapping(dataset.labels, assignment.tolist(), k)
    return 100.0 * wrong / dataset.n_points
