import numpy as np
import pytest

from swarmcluster.core import (
    ConfigError,
    DataError,
    Dataset,
    RunConfig,
    SearchBounds,
    bounds_from_dataset,
    clamp,
    derive_seed,
    flatten,
    make_rng,
    random_candidate,
    unflatten,
)


def test_bounds_are_feature_min_max():
    ds = Dataset("two", np.array([[0.0, 0.0], [2.0, 4.0]]))
    b = bounds_from_dataset(ds)
    assert b.lower.tolist() == [0.0, 0.0]
    assert b.upper.tolist() == [2.0, 4.0]


def test_bounds_single_point_degenerate():
    ds = Dataset("one", np.array([[5.0, 5.0]]))
    b = bounds_from_dataset(ds)
    assert b.lower.tolist() == b.upper.tolist() == [5.0, 5.0]


def test_bounds_iris_sepal_length_range(iris):
    # independent scan of the bundled file, bypassing the loader
    from importlib import resources

    raw = resources.files("swarmcluster._data").joinpath("iris.csv").read_text()
    first = np.array([float(line.split(",")[0]) for line in raw.strip().splitlines()])
    b = bounds_from_dataset(iris)
    assert b.lower[0] == first.min() == 4.3
    assert b.upper[0] == first.max() == 7.9


def test_empty_dataset_rejected():
    with pytest.raises(DataError):
        Dataset("empty", np.empty((0, 3)))


def test_label_count_validation():
    with pytest.raises(DataError):
        Dataset("bad", np.ones((3, 2)), labels=("a", "b"))


def test_random_candidate_uses_lower_plus_span_times_draw(scripted_rng):
    b = SearchBounds(np.zeros(2), np.ones(2))
    at_zero = random_candidate(b, 2, scripted_rng([0.0] * 4))
    assert np.array_equal(at_zero, np.zeros((2, 2)))
    at_mid = random_candidate(b, 2, scripted_rng([0.5] * 4))
    assert np.array_equal(at_mid, np.full((2, 2), 0.5))


def test_random_candidate_degenerate_bounds(scripted_rng):
    b = SearchBounds(np.full(3, 2.5), np.full(3, 2.5))
    cand = random_candidate(b, 2, scripted_rng([0.1, 0.9, 0.4, 0.6, 0.2, 0.8]))
    assert np.array_equal(cand, np.full((2, 3), 2.5))


def test_random_candidate_fixed_seed_repeats():
    b = SearchBounds(np.array([-1.0, 0.0]), np.array([1.0, 10.0]))
    a = random_candidate(b, 3, make_rng(99))
    c = random_candidate(b, 3, make_rng(99))
    assert np.array_equal(a, c)
    assert np.all(a >= b.lower) and np.all(a < b.upper)


def test_clamp_projects_and_is_idempotent():
    b = SearchBounds(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
    inside = np.array([[0.5, 1.5]])
    assert np.array_equal(clamp(inside, b), inside)
    assert clamp(np.array([[-1.0, 3.5]]), b).tolist() == [[0.0, 2.0]]
    rng = make_rng(1)
    wild = rng.normal(0, 5, size=(10, 2))
    once = clamp(wild, b)
    assert np.array_equal(clamp(once, b), once)


def test_clamp_dimension_mismatch():
    b = SearchBounds(np.zeros(2), np.ones(2))
    with pytest.raises(ValueError):
        clamp(np.zeros((1, 3)), b)


def test_flatten_round_trip():
    rng = make_rng(7)
    cents = rng.random((4, 3))
    assert np.array_equal(unflatten(flatten(cents), 4), cents)
    # row-major: centroid index varies slowest
    assert flatten(cents)[:3].tolist() == cents[0].tolist()


def test_run_config_validation():
    RunConfig(k_clusters=3, population_size=4, max_iterations=1, seed=0)
    with pytest.raises(ConfigError):
        RunConfig(k_clusters=0)
    with pytest.raises(ConfigError):
        RunConfig(k_clusters=2, population_size=0)
    with pytest.raises(ConfigError):
        RunConfig(k_clusters=2, max_iterations=0)
    with pytest.raises(ConfigError):
        RunConfig(k_clusters=2, seed=2**64)


def test_derive_seed_is_pure_and_distinguishes_cells():
    a = derive_seed(42, "iris", "choa2", 0)
    assert a == derive_seed(42, "iris", "choa2", 0)
    others = {
        derive_seed(42, "iris", "choa2", 1),
        derive_seed(42, "wine", "choa2", 0),
        derive_seed(42, "iris", "gnda", 0),
        derive_seed(43, "iris", "choa2", 0),
    }
    assert a not in others
    assert 0 <= a < 2**64
