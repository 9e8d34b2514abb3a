"""Rank-based comparison of algorithms across datasets: the Friedman
chi-square test on average ranks and pairwise post-hoc z-tests against a
control algorithm."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats as spstats

from .core import ConfigError


@dataclass(frozen=True)
class ScoreTable:
    """Mean metric value per (algorithm, dataset); lower is better."""

    algorithms: tuple
    datasets: tuple
    scores: np.ndarray  # shape (n_algorithms, n_datasets)

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=float)
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "scores", scores)
        if scores.shape != (len(self.algorithms), len(self.datasets)):
            raise ConfigError("score matrix shape does not match the name lists")
        if len(self.algorithms) < 2 or len(self.datasets) < 2:
            raise ConfigError("need at least two algorithms and two datasets")
        if not np.all(np.isfinite(scores)):
            raise ConfigError("score table has missing or non-finite cells")


@dataclass(frozen=True)
class FriedmanResult:
    algorithms: tuple
    average_ranks: np.ndarray
    statistic: float
    p_value: float
    n_datasets: int
    alpha: float = 0.05

    @property
    def rejected(self) -> bool:
        return self.p_value < self.alpha


@dataclass(frozen=True)
class PosthocRow:
    algorithm: str
    z: float
    p_value: float
    rejected: bool


def _midranks(column: np.ndarray) -> np.ndarray:
    """Ascending ranks 1..k with tied values sharing the average rank."""
    order = np.argsort(column, kind="stable")
    ranks = np.empty(column.size, dtype=float)
    pos = 0
    while pos < column.size:
        end = pos
        while end + 1 < column.size and column[order[end + 1]] == column[order[pos]]:
            end += 1
        ranks[order[pos:end + 1]] = (pos + end) / 2.0 + 1.0
        pos = end + 1
    return ranks


def rank_rows(table: ScoreTable) -> np.ndarray:
    """Per-dataset ranks of every algorithm (rank 1 = lowest score)."""
    return np.column_stack([_midranks(col) for col in table.scores.T])


def friedman_statistic(average_ranks, n_datasets: int) -> float:
    """Chi-square statistic from the average ranks of k algorithms over
    ``n_datasets`` problems."""
    ar = np.asarray(average_ranks, dtype=float)
    k = ar.size
    return float(12.0 * n_datasets / (k * (k + 1)) * (ar**2).sum() - 3.0 * n_datasets * (k + 1))


def friedman(table: ScoreTable, alpha: float = 0.05) -> FriedmanResult:
    """Friedman test over the score table (k-1 degrees of freedom)."""
    ranks = rank_rows(table)
    avg = ranks.mean(axis=1)
    chi2 = friedman_statistic(avg, len(table.datasets))
    p = float(spstats.chi2.sf(chi2, df=len(table.algorithms) - 1))
    return FriedmanResult(
        algorithms=table.algorithms,
        average_ranks=avg,
        statistic=chi2,
        p_value=p,
        n_datasets=len(table.datasets),
        alpha=alpha,
    )


def posthoc_vs_control(
    result: FriedmanResult, control: str, holm: bool = False
) -> list[PosthocRow]:
    """Pairwise z-tests of every algorithm against the control.

    Unadjusted two-sided p-values by default; ``holm`` applies the Holm
    step-down correction to the rejection decisions.
    """
    if control not in result.algorithms:
        raise ConfigError(f"unknown control algorithm {control!r}")
    k = len(result.algorithms)
    n = result.n_datasets
    se = np.sqrt(k * (k + 1) / (6.0 * n))
    control_rank = result.average_ranks[result.algorithms.index(control)]

    rows = []
    for name, ar in zip(result.algorithms, result.average_ranks):
        if name == control:
            continue
        z = float((ar - control_rank) / se)
        p = float(2.0 * spstats.norm.sf(abs(z)))
        rows.append([name, z, p, p < result.alpha])

    if holm:
        order = sorted(range(len(rows)), key=lambda i: rows[i][2])
        m = len(rows)
        still_rejecting = True
        for rank_pos, i in enumerate(order):
            threshold = result.alpha / (m - rank_pos)
            if still_rejecting and rows[i][2] < threshold:
                rows[i][3] = True
            else:
                still_rejecting = False
                rows[i][3] = False

    return [PosthocRow(*row) for row in rows]
