"""
Statistical verification of the probabilistic lemmas at desk scale.

Every check reports the observed rate, the bound it is compared with and a pass/fail at
3 binomial standard deviations. The edge-cover inequality is a theorem and must hold exactly.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from algorithms.config import auto_m_bar
from algorithms.lemmas import lemma2_trial, lemma3_trial, light_triangles
from data.features import edge_cover, enumerate_triangles, rivin_bound
from data.generators import gen_gnp
from data.models import Triangle
from experiments.config import ExperimentConfig
from experiments.statistics import SIGMAS, at_most_with_tolerance
from hashing.statistics import FrequencyEstimate, lemma1_bound, lemma1_estimate

logger = logging.getLogger(__name__)

HASH_DOMAIN = 64
HASH_RANGES = (4, 8)
LEMMA2_GRAPH = (40, 0.5)
LEMMA3_GRAPH = (48, 0.5)
DEFAULT_EPS = 0.5
RIVIN_SUBSETS = 50


@dataclass
class LemmaCheck:
    name: str
    observed: float
    bound: float
    comparison: str
    passed: bool
    trials: int
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "observed": self.observed,
            "bound": self.bound,
            "comparison": self.comparison,
            "passed": self.passed,
            "trials": self.trials,
            "details": self.details,
        }


@dataclass
class LemmaReport:
    checks: List[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "sigmas": SIGMAS, "checks": [c.to_dict() for c in self.checks]}


def check_hash_pairs(trials: int, seed: int, ranges: Sequence[int] = HASH_RANGES) -> List[LemmaCheck]:
    """Pr[h(x) = h(x') = y and the bucket of y stays small] >= 3 / (4|Y|^2)"""
    checks = []
    for range_size in ranges:
        estimate = lemma1_estimate(HASH_DOMAIN, range_size, 0, 1, 0, trials, np.random.default_rng([seed, range_size]))
        checks.append(
            LemmaCheck(
                name=f"hash-pair-range-{range_size}",
                observed=estimate.rate,
                bound=lemma1_bound(range_size),
                comparison=">=",
                passed=estimate.at_least_reference(SIGMAS),
                trials=trials,
                details={"domain_size": HASH_DOMAIN, "range_size": range_size, "sigma": estimate.sigma},
            )
        )
    return checks


def check_delta_capture(trials: int, seed: int, eps: float, quiet: bool = True) -> LemmaCheck:
    """Each light triangle keeps its three edges in Delta(X) with probability >= 2/3"""
    g = gen_gnp(*LEMMA2_GRAPH, seed=seed)
    light = light_triangles(g, eps)
    hits = np.zeros(len(light), dtype=np.int64)
    for i in tqdm(range(trials), desc="delta capture", disable=quiet):
        hits += lemma2_trial(g, eps, seed=seed * 1_000_003 + i, light=light)

    estimates = [FrequencyEstimate(int(h), trials, 2.0 / 3.0) for h in hits]
    worst = min(estimates, key=lambda e: e.rate) if estimates else None
    return LemmaCheck(
        name="light-triangle-capture",
        observed=worst.rate if worst else 1.0,
        bound=2.0 / 3.0,
        comparison=">=",
        passed=all(e.at_least_reference(SIGMAS) for e in estimates),
        trials=trials,
        details={"n": g.n, "eps": eps, "light_triangles": len(light), "worst_sigma": worst.sigma if worst else 0.0},
    )


def check_good_nodes(
    trials: int, seed: int, eps: float, m_bar: Optional[float] = None, quiet: bool = True
) -> List[LemmaCheck]:
    """With probability >= 1 - 1/n every tested U keeps at least half its nodes good"""
    g = gen_gnp(*LEMMA3_GRAPH, seed=seed)
    m_bar = auto_m_bar(g.n, eps) if m_bar is None else m_bar
    majority_failures = pair_failures = chernoff_failures = 0
    worst = 0.0
    for i in tqdm(range(trials), desc="good nodes", disable=quiet):
        trial = lemma3_trial(g, eps, m_bar, seed=seed * 1_000_003 + i)
        majority_failures += not trial.good_majority
        pair_failures += not trial.pair_bound_holds
        chernoff_failures += not trial.x_within_chernoff
        worst = max(worst, trial.worst_fraction)

    reference = 1.0 / g.n
    details = {"n": g.n, "eps": eps, "m_bar": m_bar, "worst_not_good_fraction": worst}
    return [
        LemmaCheck(
            name="good-node-majority",
            observed=majority_failures / trials,
            bound=reference,
            comparison="<=",
            passed=at_most_with_tolerance(majority_failures, trials, reference),
            trials=trials,
            details=details,
        ),
        LemmaCheck(
            name="delta-pair-multiplicity",
            observed=pair_failures / trials,
            bound=reference,
            comparison="<=",
            passed=at_most_with_tolerance(pair_failures, trials, reference),
            trials=trials,
            details={**details, "x_over_chernoff_bound": chernoff_failures},
        ),
    ]


def check_edge_cover(triangle_sets: Iterable[Iterable[Triangle]]) -> LemmaCheck:
    """|P(R)| >= (sqrt(2)/3)|R|^(2/3) for every triangle set R"""
    checked = violations = 0
    tightest = None
    for triangles in triangle_sets:
        triangles = frozenset(triangles)
        checked += 1
        if not triangles:
            continue
        slack = len(edge_cover(triangles)) / rivin_bound(len(triangles))
        tightest = slack if tightest is None else min(tightest, slack)
        violations += slack < 1.0
    return LemmaCheck(
        name="edge-cover",
        observed=float(violations),
        bound=0.0,
        comparison="==",
        passed=violations == 0,
        trials=checked,
        details={"tightest_ratio": tightest},
    )


def _session_triangle_sets(seed: int) -> List[frozenset]:
    rng = np.random.default_rng(seed)
    sets = []
    for n, p in (LEMMA2_GRAPH, LEMMA3_GRAPH):
        every = sorted(enumerate_triangles(gen_gnp(n, p, seed=seed)))
        sets.append(frozenset(every))
        for _ in range(RIVIN_SUBSETS):
            if not every:
                break
            size = int(rng.integers(1, len(every) + 1))
            chosen = rng.choice(len(every), size=size, replace=False)
            sets.append(frozenset(every[i] for i in chosen))
    return sets


def verify_lemmas(config: ExperimentConfig, which: Optional[Sequence[str]] = None) -> LemmaReport:
    """Run the selected lemma checks (all of them by default) with the config's trial counts"""
    selected = set(which or ("lemma1", "lemma2", "lemma3", "lemma4"))
    seed = config.seeds[0]
    eps = config.algo.eps if config.algo.eps is not None else DEFAULT_EPS
    checks: List[LemmaCheck] = []
    if "lemma1" in selected:
        checks += check_hash_pairs(config.hash_trials, seed)
    if "lemma2" in selected:
        checks.append(check_delta_capture(config.trials, seed, eps, quiet=config.quiet))
    if "lemma3" in selected:
        checks += check_good_nodes(config.trials, seed, eps, config.algo.m_bar, quiet=config.quiet)
    if "lemma4" in selected:
        checks.append(check_edge_cover(_session_triangle_sets(seed)))

    for check in checks:
        log = logger.info if check.passed else logger.warning
        log("%s: observed %.4f %s %.4f -> %s", check.name, check.observed, check.comparison, check.bound, check.passed)
    return LemmaReport(checks=checks)
