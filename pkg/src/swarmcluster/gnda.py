"""Generalized-normal-distribution optimizer: local exploitation around the
candidate/best/mean triple, differential global exploration, and a greedy
per-candidate screen."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import ConfigError, Dataset, RunConfig, bounds_from_dataset, make_rng
from .objective import FitnessFunction
from .choa import OptimizerResult

MIN_POPULATION = 4  # global exploration needs three distinct partners


def penalty_factor(lam1: float, lam2: float, a: float, b: float) -> float:
    """Box-Muller-shaped scale factor; the ``a <= b`` branch keeps the plain
    cosine, the other flips its sign."""
    base = math.sqrt(-math.log(lam1))
    if a <= b:
        return base * math.cos(2.0 * math.pi * lam2)
    return base * math.cos(2.0 * math.pi * lam2 + math.pi)


def gnda_local(x: np.ndarray, best: np.ndarray, mean: np.ndarray, eta: float) -> np.ndarray:
    """Exploitation trial: sample around the generalized mean of the
    candidate, the best position, and the population mean (before clamping).
    """
    mu = (x + best + mean) / 3.0
    var = ((x - mu) ** 2 + (best - mu) ** 2 + (mean - mu) ** 2) / 3.0
    return mu + np.sqrt(var) * eta


def gnda_global(
    x: np.ndarray,
    f_x: float,
    partners: np.ndarray,
    partner_fitness: np.ndarray,
    beta: float,
    lam3: float,
    lam4: float,
) -> np.ndarray:
    """Exploration trial built from two fitness-directed difference vectors
    over three distinct partners (before clamping)."""
    p1, p2, p3 = partners
    if f_x < partner_fitness[0]:
        v1 = x - p1
    else:
        v1 = p1 - x
    if partner_fitness[1] < partner_fitness[2]:
        v2 = p2 - p3
    else:
        v2 = p3 - p2
    return x + beta * abs(lam3) * v1 + (1.0 - beta) * abs(lam4) * v2


def gnda_screen(x, f_x, trial, f_trial):
    """Keep the trial only on strict improvement."""
    if f_trial < f_x:
        return trial, f_trial
    return x, f_x


@dataclass
class GndaState:
    """Population, per-candidate fitness, and the best solution found."""

    positions: np.ndarray
    fitness: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    rng: np.random.Generator
    lower: np.ndarray
    upper: np.ndarray
    t: int = 0
    trace: list = field(default_factory=list)

    @classmethod
    def initialize(cls, fitness_fn, lower, upper, pop_size, rng) -> "GndaState":
        if pop_size < MIN_POPULATION:
            raise ConfigError(f"population must be >= {MIN_POPULATION} for global exploration")
        positions = lower + (upper - lower) * rng.random((pop_size, lower.size))
        fitness = np.array([fitness_fn(p) for p in positions])
        best = int(np.argmin(fitness))
        return cls(
            positions=positions,
            fitness=fitness,
            best_position=positions[best].copy(),
            best_fitness=float(fitness[best]),
            rng=rng,
            lower=np.asarray(lower, dtype=float),
            upper=np.asarray(upper, dtype=float),
        )

    def sweep(self, fitness_fn, observer=None) -> float:
        """One pass over all candidates with immediate, in-order screening.

        ``observer`` is called with every position accepted by the screen
        (the hybrid feeds these into its leader bookkeeping).
        """
        pop, rng = self.positions, self.rng
        n = pop.shape[0]
        if n < MIN_POPULATION:
            raise ConfigError(f"population must be >= {MIN_POPULATION} for global exploration")
        self.t += 1
        mean = pop.mean(axis=0)  # recomputed once per sweep
        for i in range(n):
            alpha = rng.random()
            if alpha > 0.5:  # as printed: alpha above one half exploits locally
                lam1 = rng.random()
                while lam1 == 0.0:  # log(0) guard
                    lam1 = rng.random()
                lam2 = rng.random()
                a = rng.random()
                b = rng.random()
                eta = penalty_factor(lam1, lam2, a, b)
                trial = gnda_local(pop[i], self.best_position, mean, eta)
            else:
                others = np.delete(np.arange(n), i)
                picks = rng.choice(others, size=3, replace=False)
                beta = rng.random()
                lam3 = rng.standard_normal()
                lam4 = rng.standard_normal()
                trial = gnda_global(
                    pop[i], float(self.fitness[i]), pop[picks],
                    self.fitness[picks], beta, lam3, lam4,
                )
            trial = np.clip(trial, self.lower, self.upper)
            f_trial = fitness_fn(trial)
            if f_trial < self.fitness[i]:
                pop[i] = trial
                self.fitness[i] = f_trial
                if observer is not None:
                    observer(trial, f_trial)
                if f_trial < self.best_fitness:
                    self.best_position = trial.copy()
                    self.best_fitness = f_trial
        self.trace.append(self.best_fitness)
        return self.best_fitness


def gnda_minimize(
    fitness_fn,
    lower: np.ndarray,
    upper: np.ndarray,
    pop_size: int,
    max_iterations: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, float, np.ndarray]:
    """Run the optimizer on a flat search space; returns (best, fitness, trace)."""
    state = GndaState.initialize(fitness_fn, lower, upper, pop_size, rng)
    for _ in range(max_iterations):
        state.sweep(fitness_fn)
    return state.best_position.copy(), state.best_fitness, np.array(state.trace)


def gnda_run(dataset: Dataset, config: RunConfig, objective: str = "distance") -> OptimizerResult:
    """Cluster a dataset with the generalized-normal-distribution optimizer."""
    bounds = bounds_from_dataset(dataset)
    lower, upper = bounds.tiled(config.k_clusters)
    fitness_fn = FitnessFunction(dataset, config.k_clusters, objective)
    rng = make_rng(config.seed)
    best, best_fit, trace = gnda_minimize(
        fitness_fn, lower, upper, config.population_size, config.max_iterations, rng
    )
    return OptimizerResult(
        centroids=best.reshape(config.k_clusters, -1),
        best_fitness=best_fit,
        trace=trace,
        evaluations=fitness_fn.evaluations,
    )
