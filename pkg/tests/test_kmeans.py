import numpy as np
import pytest

from swarmcluster.core import ConfigError, Dataset
from swarmcluster.kmeans import kmeans_run
from swarmcluster.objective import error_rate


def one_d(values, labels=None):
    return Dataset("1d", np.array(values, dtype=float).reshape(-1, 1), labels=labels)


def test_hand_worked_lloyd_step():
    ds = one_d([0.0, 1.0, 10.0, 11.0])
    result = kmeans_run(ds, 2, seed=0, initial_centroids=[[0.0], [10.0]])
    assert sorted(result.centroids[:, 0].tolist()) == [0.5, 10.5]
    assert result.sicd == pytest.approx(2.0)
    assert result.sse == pytest.approx(1.0)
    assert result.assignment.tolist() == [0, 0, 1, 1]


def test_k_equals_n_is_exact():
    ds = one_d([1.0, 5.0, 9.0])
    result = kmeans_run(ds, 3, seed=7)
    assert result.sicd == pytest.approx(0.0)
    assert result.sse == pytest.approx(0.0)


def test_k_larger_than_n_rejected():
    with pytest.raises(ConfigError):
        kmeans_run(one_d([1.0, 2.0]), 3, seed=0)


def test_sse_history_non_increasing():
    rng = np.random.default_rng(4)
    for seed in range(20):
        points = rng.normal(size=(40, 3)) + rng.integers(0, 4, size=(40, 1)) * 3.0
        ds = Dataset("blobs", points)
        result = kmeans_run(ds, 4, seed=seed)
        assert np.all(np.diff(result.sse_history) <= 1e-9)
        assert result.iterations_used == len(result.sse_history)
        assert result.iterations_used <= 300


def test_fixed_point_of_own_output(iris):
    first = kmeans_run(iris, 3, seed=1)
    again = kmeans_run(iris, 3, seed=99, initial_centroids=first.centroids)
    assert np.allclose(again.centroids, first.centroids)
    assert np.array_equal(again.assignment, first.assignment)
    assert again.sse == pytest.approx(first.sse)


def test_empty_cluster_reseeded_to_farthest_point():
    # centroid 1 starts far outside the data and captures nothing; it must be
    # re-seeded with the worst-fit point instead of dying
    ds = one_d([0.0, 1.0, 2.0])
    result = kmeans_run(ds, 2, seed=0, initial_centroids=[[1.0], [50.0]])
    assert set(result.assignment.tolist()) == {0, 1}
    assert result.sicd == pytest.approx(1.0)


def test_determinism():
    ds = one_d([3.0, 1.0, 4.0, 1.5, 9.0, 2.6])
    a = kmeans_run(ds, 2, seed=5)
    b = kmeans_run(ds, 2, seed=5)
    assert np.array_equal(a.centroids, b.centroids)
    assert np.array_equal(a.assignment, b.assignment)


def test_iris_error_rate_band(iris):
    # classical quality check: mean error rate over 50 seeded runs sits in
    # the band around the well-known k-means result
    rates = []
    for seed in range(50):
        result = kmeans_run(iris, 3, seed=seed)
        rates.append(error_rate(iris, result.assignment))
    mean_er = float(np.mean(rates))
    assert 10.0 <= mean_er <= 17.0
