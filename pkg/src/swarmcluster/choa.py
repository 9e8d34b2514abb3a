"""Chimp optimizer with four independent group schedules and chaotic moves.

The population holds flat candidate vectors.  Four leader slots (attacker,
barrier, chaser, driver in ascending fitness order) guide every move; with
probability one half a chimp instead relocates chaotically inside the
bounds.  Versions I and II differ only in the per-group decline schedules
of the coefficient ``f``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chaos import ChaoticMap
from .core import ConfigError, Dataset, RunConfig, bounds_from_dataset, make_rng
from .objective import FitnessFunction, assign_points

VERSIONS = ("I", "II")
N_GROUPS = 4
N_LEADERS = 4


def coefficient_f(version: str, group: int, t: int, T: int) -> float:
    """Group decline schedule value at iteration ``t`` of ``T`` (1-based).

    Logs are natural; the log ratio is base-invariant anyway.  Some
    schedules go negative late in the run, which is accepted as defined.
    """
    if version not in VERSIONS:
        raise ValueError(f"unknown version {version!r}")
    if not 1 <= group <= N_GROUPS:
        raise ValueError(f"group must be in 1..{N_GROUPS}, got {group}")
    if not 1 <= t <= T:
        raise ValueError(f"iteration {t} outside 1..{T}")
    u = t / T
    if version == "I":
        if group == 1:
            return 1.95 - 2.0 * t ** (1 / 4) / T ** (1 / 3)
        if group == 2:
            return 1.95 - 2.0 * t ** (1 / 3) / T ** (1 / 4)
        if group == 3:
            return -3.0 * t ** (1 / 3) / T ** (1 / 3) + 1.5
        return -2.0 * u**3 + 1.5
    if group == 1:
        # log(t)/log(T) is 0/0 for a single-iteration run; the schedule is
        # then at its endpoint, where the ratio is 1.
        ratio = math.log(t) / math.log(T) if T > 1 else 1.0
        return 2.5 - 2.0 * ratio
    if group == 2:
        return -2.2 * u**3 + 2.5
    if group == 3:
        return 2.2 + 2.0 * math.exp(-((4.0 * u) ** 2))
    return 2.5 + 2.0 * u**2 - 2.0 * (2.0 * u)


def draw_coefficients(version, group, t, T, dim, chaos: ChaoticMap, rng):
    """One set of move coefficients: scalar ``f``, per-dimension ``a`` and
    ``c``, and a fresh chaotic scalar ``m``."""
    f = coefficient_f(version, group, t, T)
    r1 = rng.random(dim)
    r2 = rng.random(dim)
    a = 2.0 * f * r1 - f
    c = 2.0 * r2
    m = chaos.next()
    return f, a, c, m


def leader_guided_position(x: np.ndarray, leader_positions: np.ndarray, coeffs) -> np.ndarray:
    """Average of the four leader-attraction moves (before clamping).

    ``coeffs`` holds one ``(a, c, m)`` triple per leader: the move toward
    leader L is ``X_L - a * |c * X_L - m * x|``.
    """
    acc = np.zeros_like(x)
    for (a, c, m), lead in zip(coeffs, leader_positions):
        d = np.abs(c * lead - m * x)
        acc += lead - a * d
    return acc / len(leader_positions)


def chaotic_jump(lower: np.ndarray, upper: np.ndarray, chaos: ChaoticMap) -> np.ndarray:
    """In-bounds relocation driven by one fresh chaotic draw per coordinate."""
    draws = np.array([chaos.next() for _ in range(lower.size)])
    return lower + draws * (upper - lower)


@dataclass
class ChoaState:
    """Mutable optimizer state shared by the plain run loop and the hybrid."""

    positions: np.ndarray  # (P, D)
    fitness: np.ndarray  # (P,)
    groups: np.ndarray  # (P,) values 1..4, fixed for the run
    leader_positions: np.ndarray  # (4, D), ascending fitness
    leader_fitness: np.ndarray  # (4,)
    version: str
    chaos: ChaoticMap
    rng: np.random.Generator
    lower: np.ndarray
    upper: np.ndarray
    max_iterations: int
    strict_alg1: bool = False
    t: int = 0
    trace: list = field(default_factory=list)

    @classmethod
    def initialize(
        cls,
        fitness_fn,
        lower: np.ndarray,
        upper: np.ndarray,
        pop_size: int,
        max_iterations: int,
        version: str,
        chaos: ChaoticMap,
        rng: np.random.Generator,
        strict_alg1: bool = False,
        positions: np.ndarray | None = None,
        fitness: np.ndarray | None = None,
    ) -> "ChoaState":
        """Fresh state with a random population, or adopt a prepared one.

        Group membership is drawn uniformly here either way, after the
        population exists, so a caller that supplies its own (e.g. an
        opposition-based initializer) consumes the same stream afterwards.
        """
        if positions is None:
            positions = lower + (upper - lower) * rng.random((pop_size, lower.size))
            fitness = np.array([fitness_fn(p) for p in positions])
        else:
            positions = np.array(positions, dtype=float)
            fitness = np.array(fitness, dtype=float)
        groups = rng.integers(1, N_GROUPS + 1, size=positions.shape[0])
        order = np.argsort(fitness, kind="stable")
        slots = order[np.minimum(np.arange(N_LEADERS), positions.shape[0] - 1)]
        state = cls(
            positions=positions,
            fitness=fitness,
            groups=groups,
            leader_positions=positions[slots].copy(),
            leader_fitness=fitness[slots].copy(),
            version=version,
            chaos=chaos,
            rng=rng,
            lower=np.asarray(lower, dtype=float),
            upper=np.asarray(upper, dtype=float),
            max_iterations=max_iterations,
            strict_alg1=strict_alg1,
        )
        return state

    def observe(self, position: np.ndarray, fit: float) -> None:
        """Leader cascade: a newly evaluated position replaces the first slot
        it strictly beats, provided it is strictly worse than every slot
        above (ties leave all slots unchanged)."""
        lf = self.leader_fitness
        if fit < lf[0]:
            slot = 0
        elif lf[0] < fit < lf[1]:
            slot = 1
        elif lf[1] < fit < lf[2]:
            slot = 2
        elif lf[2] < fit < lf[3]:
            slot = 3
        else:
            return
        self.leader_positions[slot] = position
        self.leader_fitness[slot] = fit

    def _move(self, i: int) -> np.ndarray:
        """Unclamped new position for chimp ``i`` at the current iteration."""
        x = self.positions[i]
        group = int(self.groups[i])
        mu = self.rng.random()
        if mu < 0.5:
            if self.strict_alg1:
                # Literal branch of the original pseudocode: a scalar |a|
                # decides between converging on the leaders and chasing a
                # random agent instead.
                f = coefficient_f(self.version, group, self.t, self.max_iterations)
                a_cond = 2.0 * f * self.rng.random() - f
                if abs(a_cond) >= 1.0:
                    j = int(self.rng.integers(self.positions.shape[0]))
                    _, a, c, m = draw_coefficients(
                        self.version, group, self.t, self.max_iterations,
                        x.size, self.chaos, self.rng,
                    )
                    other = self.positions[j]
                    return other - a * np.abs(c * other - m * x)
            coeffs = []
            for _ in range(N_LEADERS):
                _, a, c, m = draw_coefficients(
                    self.version, group, self.t, self.max_iterations,
                    x.size, self.chaos, self.rng,
                )
                coeffs.append((a, c, m))
            return leader_guided_position(x, self.leader_positions, coeffs)
        return chaotic_jump(self.lower, self.upper, self.chaos)

    def step(self, fitness_fn, screened: bool = False) -> float:
        """One sweep over all chimps; returns the attacker fitness.

        Every proposal is evaluated and fed to the leader cascade.  Plain
        runs commit each move unconditionally; with ``screened`` a move
        enters the population only on strict improvement (the greedy screen
        the hybrid applies while its exploitation phase is active).
        """
        self.t += 1
        for i in range(self.positions.shape[0]):
            new = np.clip(self._move(i), self.lower, self.upper)
            fit = fitness_fn(new)
            self.observe(new, fit)
            if not screened or fit < self.fitness[i]:
                self.positions[i] = new
                self.fitness[i] = fit
        best = float(self.leader_fitness[0])
        self.trace.append(best)
        return best


@dataclass
class OptimizerResult:
    """Outcome of one optimizer run on a clustering problem."""

    centroids: np.ndarray  # (k, d)
    best_fitness: float
    trace: np.ndarray  # best-so-far objective per iteration
    evaluations: int

    def assignment(self, dataset: Dataset) -> np.ndarray:
        return assign_points(dataset, self.centroids)


def choa_minimize(
    fitness_fn,
    lower: np.ndarray,
    upper: np.ndarray,
    pop_size: int,
    max_iterations: int,
    rng: np.random.Generator,
    version: str = "II",
    chaos_kind: str = "gauss",
    strict_alg1: bool = False,
) -> tuple[np.ndarray, float, np.ndarray]:
    """Run the chimp optimizer on a flat search space.

    Returns (best position, best fitness, best-so-far trace).
    """
    chaos = ChaoticMap(chaos_kind)
    state = ChoaState.initialize(
        fitness_fn, lower, upper, pop_size, max_iterations, version, chaos, rng,
        strict_alg1=strict_alg1,
    )
    for _ in range(max_iterations):
        state.step(fitness_fn)
    return (
        state.leader_positions[0].copy(),
        float(state.leader_fitness[0]),
        np.array(state.trace),
    )


def choa_run(
    dataset: Dataset,
    config: RunConfig,
    version: str = "II",
    chaos_kind: str = "gauss",
    objective: str = "distance",
    strict_alg1: bool = False,
) -> OptimizerResult:
    """Cluster a dataset with ChOA(I) or ChOA(II)."""
    if version not in VERSIONS:
        raise ConfigError(f"unknown ChOA version {version!r}")
    bounds = bounds_from_dataset(dataset)
    lower, upper = bounds.tiled(config.k_clusters)
    fitness_fn = FitnessFunction(dataset, config.k_clusters, objective)
    rng = make_rng(config.seed)
    best, best_fit, trace = choa_minimize(
        fitness_fn, lower, upper, config.population_size, config.max_iterations,
        rng, version=version, chaos_kind=chaos_kind, strict_alg1=strict_alg1,
    )
    return OptimizerResult(
        centroids=best.reshape(config.k_clusters, -1),
        best_fitness=best_fit,
        trace=trace,
        evaluations=fitness_fn.evaluations,
    )
