"""The five-phase hybrid: opposed initialization, a chimp sweep with
selective opposition, a generalized-normal sweep over the same population,
and opposition of the running best, repeated to the iteration budget.

The two sub-optimizers share one population.  While the normal-model phase
is enabled, its greedy screen governs every commit to that population:
chimp moves are proposals that replace a candidate only on strict
improvement, which is what lets the exploitation phase contract around the
best basin instead of being reset by exploratory moves each iteration.
Every evaluated proposal still feeds the chimp leader cascade, so the
attacker always holds the best solution seen anywhere in the hybrid.

Disabling the normal-model sweep also removes its screen; with opposition
disabled as well, the loop consumes the exact same draw sequence as the
plain chimp optimizer and reproduces its trace bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chaos import ChaoticMap
from .choa import ChoaState, OptimizerResult
from .core import ConfigError, Dataset, RunConfig, bounds_from_dataset, make_rng
from .gnda import MIN_POPULATION, GndaState
from .objective import FitnessFunction, assign_points
from .obl import oppose_candidates, opposed_init

HYBRID_VERSION = "II"
HYBRID_CHAOS = "gauss"


@dataclass(frozen=True)
class PhaseLogEntry:
    """Per-iteration observability record of the hybrid loop."""

    t: int
    attacker_fitness: float
    gnda_best_fitness: float
    global_best_fitness: float
    opposition_adopted: bool
    evaluations: int


@dataclass
class HybridResult(OptimizerResult):
    phase_log: list = field(default_factory=list)


def choagnda_minimize(
    fitness_fn,
    lower: np.ndarray,
    upper: np.ndarray,
    pop_size: int,
    max_iterations: int,
    rng: np.random.Generator,
    use_gnda: bool = True,
    use_obl: bool = True,
) -> tuple[np.ndarray, float, np.ndarray, list]:
    """Run the hybrid on a flat search space.

    Returns (best position, best fitness, best-so-far trace, phase log).
    """
    if pop_size % 2:
        raise ConfigError(f"hybrid population must be even, got {pop_size}")
    if use_gnda and pop_size < MIN_POPULATION:
        raise ConfigError(f"hybrid population must be >= {MIN_POPULATION}")

    count = 0

    def counted(x):
        nonlocal count
        count += 1
        return fitness_fn(x)

    chaos = ChaoticMap(HYBRID_CHAOS)
    if use_obl:
        positions, fitness = opposed_init(lower, upper, pop_size, rng, counted)
        state = ChoaState.initialize(
            counted, lower, upper, pop_size, max_iterations, HYBRID_VERSION,
            chaos, rng, positions=positions, fitness=fitness,
        )
    else:
        state = ChoaState.initialize(
            counted, lower, upper, pop_size, max_iterations, HYBRID_VERSION, chaos, rng
        )

    gnda_best_pos = state.leader_positions[0].copy()
    gnda_best_fit = float(state.leader_fitness[0])
    global_pos = state.leader_positions[0].copy()
    global_fit = float(state.leader_fitness[0])

    trace = []
    phase_log = []
    for t in range(1, max_iterations + 1):
        seen = count

        # chimp sweep (screened while the normal-model phase is active),
        # then opposition of the current worst half
        attacker_fit = state.step(counted, screened=use_gnda)
        if use_obl:
            order = np.argsort(state.fitness, kind="stable")
            n = order.size
            oppose_candidates(
                state.positions, state.fitness, order[n - n // 2:],
                lower, upper, counted, observer=state.observe,
            )
            attacker_fit = float(state.leader_fitness[0])

        # normal-model sweep over the same population, seeded with the
        # better of the attacker and the incumbent best of this phase
        if use_gnda:
            if attacker_fit <= gnda_best_fit:
                gnda_best_pos = state.leader_positions[0].copy()
                gnda_best_fit = attacker_fit
            sweep = GndaState(
                positions=state.positions,
                fitness=state.fitness,
                best_position=gnda_best_pos,
                best_fitness=gnda_best_fit,
                rng=rng,
                lower=state.lower,
                upper=state.upper,
            )
            sweep.sweep(counted, observer=state.observe)
            gnda_best_pos = sweep.best_position
            gnda_best_fit = float(sweep.best_fitness)
            attacker_fit = float(state.leader_fitness[0])

        # challenge the running best with its opposite
        for pos, fit in ((state.leader_positions[0], attacker_fit),
                         (gnda_best_pos, gnda_best_fit)):
            if fit < global_fit:
                global_pos = np.array(pos, copy=True)
                global_fit = float(fit)
        adopted = False
        if use_obl:
            opp = lower + upper - global_pos
            f_opp = counted(opp)
            if f_opp < global_fit:
                global_pos = opp
                global_fit = float(f_opp)
                state.observe(opp, f_opp)
                adopted = True

        trace.append(global_fit)
        phase_log.append(PhaseLogEntry(
            t=t,
            attacker_fitness=float(state.leader_fitness[0]),
            gnda_best_fitness=gnda_best_fit,
            global_best_fitness=global_fit,
            opposition_adopted=adopted,
            evaluations=count - seen,
        ))

    return global_pos.copy(), global_fit, np.array(trace), phase_log


def choagnda_run(
    dataset: Dataset,
    config: RunConfig,
    use_gnda: bool = True,
    use_obl: bool = True,
    objective: str = "distance",
) -> tuple[HybridResult, np.ndarray]:
    """Cluster a dataset with the hybrid; returns (result, assignment)."""
    bounds = bounds_from_dataset(dataset)
    lower, upper = bounds.tiled(config.k_clusters)
    fitness_fn = FitnessFunction(dataset, config.k_clusters, objective)
    rng = make_rng(config.seed)
    best, best_fit, trace, phase_log = choagnda_minimize(
        fitness_fn, lower, upper, config.population_size, config.max_iterations,
        rng, use_gnda=use_gnda, use_obl=use_obl,
    )
    centroids = best.reshape(config.k_clusters, -1)
    result = HybridResult(
        centroids=centroids,
        best_fitness=best_fit,
        trace=trace,
        evaluations=fitness_fn.evaluations,
        phase_log=phase_log,
    )
    return result, assign_points(dataset, centroids)
