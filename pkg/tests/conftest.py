import numpy as np
import pytest

from swarmcluster.core import Dataset
from swarmcluster.data import load_dataset


class ScriptedRng:
    """Generator stand-in fed from a fixed queue of values."""

    def __init__(self, values):
        self.values = list(values)

    def _take(self, n):
        if len(self.values) < n:
            raise AssertionError("scripted rng exhausted")
        out, self.values = self.values[:n], self.values[n:]
        return out

    def random(self, size=None):
        if size is None:
            return self._take(1)[0]
        if isinstance(size, tuple):
            n = int(np.prod(size))
            return np.array(self._take(n)).reshape(size)
        return np.array(self._take(int(size)))

    def integers(self, low, high=None, size=None):
        n = 1 if size is None else int(size)
        vals = [int(v) for v in self._take(n)]
        return vals[0] if size is None else np.array(vals)


class ScriptedChaos:
    """Chaotic stream stand-in fed from a fixed queue."""

    kind = "scripted"

    def __init__(self, values):
        self.values = list(values)

    def next(self):
        if not self.values:
            raise AssertionError("scripted chaos exhausted")
        return self.values.pop(0)


@pytest.fixture(scope="session")
def iris():
    return load_dataset("iris")


@pytest.fixture(scope="session")
def wine():
    return load_dataset("wine")


@pytest.fixture
def tiny_dataset():
    return Dataset(name="tiny", points=np.array([[0.0, 0.0], [2.0, 4.0], [1.0, 1.0]]))


@pytest.fixture
def scripted_rng():
    return ScriptedRng


@pytest.fixture
def scripted_chaos():
    return ScriptedChaos
