"""
Round scaling over a grid of network sizes.

For every n the median round count is divided by the algorithm's reference curve. The study
is flagged when those ratios spread by more than a factor of 3 over the grid. A constant c is
fitted at the smallest n (worst run) and every larger n is checked against c times the curve.
A single listing loop is checked per run against |X| + m_bar log n instead, since |X| is random.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from sklearn.linear_model import LinearRegression

from errors import ConfigurationError
from experiments.config import RUN_ALGORITHMS, ExperimentConfig
from experiments.runner import TrialResult, reference_rounds, run_trials

logger = logging.getLogger(__name__)

MAX_RATIO_SPREAD = 3.0


@dataclass
class ScalingReport:
    algorithm: str
    beta: int
    table: pd.DataFrame
    ratio_spread: Optional[float]
    flagged: bool
    fitted_constant: Optional[float]
    exceedances: List[int]
    fitted_exponent: Optional[float]
    excluded_runs: int

    @property
    def passed(self) -> bool:
        return not self.flagged and not self.exceedances

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "beta": self.beta,
            "rows": self.table.to_dict(orient="records"),
            "ratio_spread": self.ratio_spread,
            "max_ratio_spread": MAX_RATIO_SPREAD,
            "flagged": self.flagged,
            "fitted_constant": self.fitted_constant,
            "exceedances": self.exceedances,
            "fitted_exponent": self.fitted_exponent,
            "excluded_runs": self.excluded_runs,
            "passed": self.passed,
        }


def fit_exponent(ns: Sequence[int], rounds: Sequence[float]) -> Optional[float]:
    """Slope of log(rounds) against log(n)"""
    points = [(n, r) for n, r in zip(ns, rounds) if r and r > 0]
    if len(points) < 2:
        return None
    x = np.log([[n] for n, _ in points])
    y = np.log([r for _, r in points])
    return float(LinearRegression().fit(x, y).coef_[0])


def run_reference(algorithm: str, result: TrialResult) -> float:
    if algorithm == "a3" and result.loop_reference:
        return result.loop_reference
    return reference_rounds(algorithm, result.n, result.eps)


def scaling_study(
    algorithm: str,
    n_grid: Sequence[int],
    seeds: Sequence[int],
    beta: int = 2,
    base: Optional[ExperimentConfig] = None,
) -> ScalingReport:
    if algorithm not in RUN_ALGORITHMS:
        raise ConfigurationError(f"cannot study rounds of {algorithm!r}")
    grid = list(n_grid)
    if len(grid) < 3 or any(a >= b for a, b in zip(grid, grid[1:])):
        raise ConfigurationError(f"n grid must be ascending with at least 3 points, got {grid}")

    base = base or ExperimentConfig()
    rows = []
    excluded = 0
    for n in grid:
        config = replace(base, algorithm=algorithm, instance=base.instance.with_n(n), seeds=list(seeds), beta=beta)
        results = run_trials(config)
        halted = [r for r in results if r.halted]
        if len(halted) < len(results):
            logger.warning(
                "n=%d: excluding %d runs that hit %d rounds", n, len(results) - len(halted), config.max_rounds
            )
        excluded += len(results) - len(halted)
        if not halted:
            continue
        rounds = np.array([r.rounds for r in halted], dtype=float)
        reference = reference_rounds(algorithm, n, halted[0].eps)
        run_ratios = [r.rounds / run_reference(algorithm, r) for r in halted if run_reference(algorithm, r) > 0]
        rows.append(
            {
                "n": n,
                "runs": len(halted),
                "eps": halted[0].eps,
                "min_rounds": float(rounds.min()),
                "median_rounds": float(np.median(rounds)),
                "max_rounds": float(rounds.max()),
                "reference": reference,
                "ratio": float(np.median(rounds)) / reference if reference > 0 else None,
                "max_ratio": max(run_ratios) if run_ratios else None,
            }
        )

    table = pd.DataFrame(rows)
    ratios = [r["ratio"] for r in rows if r["ratio"]]
    spread = max(ratios) / min(ratios) if ratios else None

    fitted = None
    exceedances: List[int] = []
    if rows and rows[0]["max_ratio"] is not None:
        fitted = rows[0]["max_ratio"]
        exceedances = [r["n"] for r in rows[1:] if r["max_ratio"] is not None and r["max_ratio"] > fitted]

    report = ScalingReport(
        algorithm=algorithm,
        beta=beta,
        table=table,
        ratio_spread=spread,
        flagged=spread is not None and spread > MAX_RATIO_SPREAD,
        fitted_constant=fitted,
        exceedances=exceedances,
        fitted_exponent=fit_exponent([r["n"] for r in rows], [r["median_rounds"] for r in rows]),
        excluded_runs=excluded,
    )
    logger.info("%s scaling: ratio spread %s, fitted exponent %s", algorithm, spread, report.fitted_exponent)
    return report
