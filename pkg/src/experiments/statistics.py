from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np
from scipy.stats import binomtest

from hashing.statistics import FrequencyEstimate

CONFIDENCE = 0.95
SIGMAS = 3.0


@dataclass(frozen=True)
class RateSummary:
    """Observed success rate with a Wilson confidence interval and an optional target"""

    successes: int
    trials: int
    ci_low: float
    ci_high: float
    target: Optional[float] = None

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    @property
    def meets_target(self) -> Optional[bool]:
        if self.target is None or not self.trials:
            return None
        return FrequencyEstimate(self.successes, self.trials, self.target).at_least_reference(SIGMAS)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "successes": self.successes,
            "trials": self.trials,
            "rate": self.rate,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "target": self.target,
            "meets_target": self.meets_target,
        }


def summarize_rate(successes: int, trials: int, target: Optional[float] = None) -> RateSummary:
    if trials == 0:
        return RateSummary(successes=0, trials=0, ci_low=0.0, ci_high=1.0, target=target)
    interval = binomtest(successes, trials).proportion_ci(confidence_level=CONFIDENCE, method="wilson")
    return RateSummary(
        successes=successes,
        trials=trials,
        ci_low=float(interval.low),
        ci_high=float(interval.high),
        target=target,
    )


def round_summary(rounds: Sequence[int]) -> Dict[str, Optional[float]]:
    if not rounds:
        return {"min": None, "median": None, "max": None}
    values = np.asarray(rounds, dtype=float)
    return {"min": float(values.min()), "median": float(np.median(values)), "max": float(values.max())}


def at_most_with_tolerance(successes: int, trials: int, reference: float, sigmas: float = SIGMAS) -> bool:
    """Whether an observed rate stays below `reference` plus `sigmas` binomial standard deviations"""
    estimate = FrequencyEstimate(successes, trials, reference)
    return estimate.rate <= reference + sigmas * estimate.sigma
