"""Lloyd's k-means with Forgy initialization, the classical comparator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConfigError, Dataset, make_rng
from .objective import pairwise_distances, sicd


@dataclass
class KMeansResult:
    centroids: np.ndarray
    assignment: np.ndarray
    sse: float
    sicd: float
    iterations_used: int
    sse_history: np.ndarray  # one value per Lloyd iteration, non-increasing
    sicd_history: np.ndarray  # distance-sum per iteration, not monotone


def kmeans_run(
    dataset: Dataset,
    k: int,
    seed: int,
    max_iters: int = 300,
    initial_centroids=None,
) -> KMeansResult:
    """Alternate assign/update until assignments stabilize.

    Initial centroids are ``k`` distinct random data points unless
    ``initial_centroids`` supplies them directly.  A cluster that loses all
    its points is re-seeded to the point currently farthest from its own
    centroid, which keeps the squared error non-increasing.
    """
    points = dataset.points
    n = points.shape[0]
    if k > n:
        raise ConfigError(f"k={k} exceeds the {n} data points")
    if initial_centroids is None:
        rng = make_rng(seed)
        initial_centroids = points[rng.choice(n, size=k, replace=False)]
    centroids = np.array(initial_centroids, dtype=float).reshape(k, -1).copy()

    labels = None
    sse_history = []
    sicd_history = []
    iterations = 0
    for _ in range(max_iters):
        iterations += 1
        dists = pairwise_distances(points, centroids)
        new_labels = dists.argmin(axis=1)

        # re-seed empty clusters with the worst-fit points, one at a time
        taken = set()
        for j in range(k):
            if np.any(new_labels == j):
                continue
            own = dists[np.arange(n), new_labels].copy()
            for idx in taken:
                own[idx] = -np.inf
            far = int(own.argmax())
            taken.add(far)
            centroids[j] = points[far]
            new_labels[far] = j

        for j in range(k):
            members = points[new_labels == j]
            if members.size:
                centroids[j] = members.mean(axis=0)
        sse_history.append(float(((points - centroids[new_labels]) ** 2).sum()))
        sicd_history.append(sicd(dataset, centroids))

        if labels is not None and np.array_equal(labels, new_labels):
            labels = new_labels
            break
        labels = new_labels

    return KMeansResult(
        centroids=centroids,
        assignment=labels,
        sse=sse_history[-1],
        sicd=sicd_history[-1],
        iterations_used=iterations,
        sse_history=np.array(sse_history),
        sicd_history=np.array(sicd_history),
    )
