"""Opposition-based learning: bound-reflected points, opposed population
initialization, and selective opposition of the worst candidates."""

from __future__ import annotations

import numpy as np

from .core import ConfigError


def opposite(x: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Bound reflection ``L + U - x`` of an in-bounds point."""
    x = np.asarray(x, dtype=float)
    if np.any(x < lower) or np.any(x > upper):
        raise ValueError("point lies outside the bounds; only feasible points are opposed")
    return lower + upper - x


def opposed_init(
    lower: np.ndarray,
    upper: np.ndarray,
    pop_size: int,
    rng: np.random.Generator,
    fitness_fn,
) -> tuple[np.ndarray, np.ndarray]:
    """Half random, half opposite, the whole sorted ascending by fitness.

    The sort is stable, so equal-fitness candidates keep generation order
    (randoms before their opposites).
    """
    if pop_size < 2 or pop_size % 2:
        raise ConfigError(f"opposed initialization needs an even population >= 2, got {pop_size}")
    half = pop_size // 2
    randoms = lower + (upper - lower) * rng.random((half, lower.size))
    opposites = lower + upper - randoms
    positions = np.vstack([randoms, opposites])
    fitness = np.array([fitness_fn(p) for p in positions])
    order = np.argsort(fitness, kind="stable")
    return positions[order], fitness[order]


def oppose_candidates(
    positions: np.ndarray,
    fitness: np.ndarray,
    indices,
    lower: np.ndarray,
    upper: np.ndarray,
    fitness_fn,
    observer=None,
) -> int:
    """Replace each indexed candidate by its opposite on strict improvement.

    Mutates ``positions`` and ``fitness`` in place and returns the number of
    adoptions; ``observer`` is called with every adopted position.
    """
    adopted = 0
    for i in indices:
        opp = lower + upper - positions[i]
        f_opp = fitness_fn(opp)
        if f_opp < fitness[i]:
            positions[i] = opp
            fitness[i] = f_opp
            adopted += 1
            if observer is not None:
                observer(opp, f_opp)
    return adopted


def selective_opposition(
    positions: np.ndarray,
    fitness: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    fitness_fn,
    observer=None,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Give each worst-half candidate a shot at its opposite.

    The input must already be sorted ascending by fitness; the output is
    re-sorted.  Returns (positions, fitness, number of adoptions).
    """
    positions = np.array(positions, dtype=float)
    fitness = np.array(fitness, dtype=float)
    n = positions.shape[0]
    adopted = oppose_candidates(
        positions, fitness, range(n - n // 2, n), lower, upper, fitness_fn, observer
    )
    order = np.argsort(fitness, kind="stable")
    return positions[order], fitness[order], adopted
