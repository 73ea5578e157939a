"""
Runs one algorithm over a list of seeds and compares every run with the brute-force oracle.

Each seed is one independent trial owning its instance, network and simulator, so trials may
be spread over worker processes; the report is assembled afterwards in seed order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import repeat
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import pandas as pd
from tqdm import tqdm

from algorithms.composition import find_triangle, list_triangles
from algorithms.config import log2n
from algorithms.heavy import AlgorithmA1, AlgorithmA2
from algorithms.lemmas import chernoff_x_bound
from algorithms.light import AlgorithmA3, SubAlgorithm, sub_a_round_bound
from congest.engine import IdleProgram, Program, RunReport, run
from congest.network import Network, build_network, id_bits_for
from data.features import classify_heavy, enumerate_triangles, is_local_listing, rivin_bound, satisfies_rivin
from data.generators import gen_gnp, gen_planted_instance
from data.models import Graph, Triangle
from data.repositories import load_edge_list
from errors import ConfigurationError
from experiments.config import RUN_ALGORITHMS, ExperimentConfig, InstanceSpec
from experiments.statistics import RateSummary, round_summary, summarize_rate

logger = logging.getLogger(__name__)

LOOP_STAGES = (AlgorithmA3.name, SubAlgorithm.name)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    # triangles whose individual detection rate is tracked
    targets: FrozenSet[Triangle]


def build_instance(spec: InstanceSpec, run_seed: int) -> Instance:
    seed = spec.seed if spec.seed is not None else run_seed
    if spec.kind == "file":
        g = load_edge_list(spec.graph_file)
        return Instance(g, enumerate_triangles(g))
    if spec.kind == "gnp":
        g = gen_gnp(spec.n, 0.5 if spec.p is None else spec.p, seed)
        return Instance(g, enumerate_triangles(g))
    if spec.kind == "complete":
        g = Graph.complete(spec.n)
        return Instance(g, enumerate_triangles(g))

    planted = gen_planted_instance(spec.n, spec.kind, seed, h=spec.h, t=spec.t, p=spec.p)
    g = planted.graph
    if planted.designated_edge is not None:
        j, k = planted.designated_edge
        targets = frozenset(t for t in enumerate_triangles(g) if j in t.vertices and k in t.vertices)
    else:
        targets = frozenset(planted.planted_triangles)
    return Instance(g, targets)


def build_program(config: ExperimentConfig) -> Program:
    algo = config.algo
    if config.algorithm == "a1":
        return AlgorithmA1(config.component_eps())
    if config.algorithm == "a2":
        return AlgorithmA2(config.component_eps())
    if config.algorithm == "a3":
        return AlgorithmA3(config.component_eps(), c_stop=algo.c_stop, m_bar=algo.m_bar)
    if config.algorithm == "find":
        return find_triangle(algo.delta, algo)
    if config.algorithm == "list":
        return list_triangles(algo)
    if config.algorithm == "idle":
        return IdleProgram(1)
    raise ConfigurationError(f"{config.algorithm!r} is not a distributed algorithm; expected one of {RUN_ALGORITHMS}")


def reference_rounds(algorithm: str, n: int, eps: float) -> float:
    """Asymptotic round curve each algorithm is normalized against (constants dropped)"""
    log_n = log2n(n)
    if algorithm == "find":
        return n ** (2.0 / 3.0) * log_n ** (2.0 / 3.0)
    if algorithm in ("list", "idle"):
        return n**0.75 * log_n
    if algorithm == "a1":
        return n ** (1.0 - eps)
    if algorithm == "a2":
        return n ** (1.0 - eps / 2.0)
    if algorithm == "a3":
        return n ** (1.0 - eps) + n ** ((1.0 + eps) / 2.0) * log_n
    raise ConfigurationError(f"no reference curve for {algorithm!r}")


def success_target(config: ExperimentConfig, n: int) -> Optional[float]:
    if config.algorithm == "find":
        return 1.0 - config.algo.delta
    if config.algorithm == "list":
        return 1.0 - 1.0 / n
    return None


@dataclass
class TrialResult:
    seed: int
    n: int
    m: int
    eps: float
    rounds: int
    halted: bool
    oracle_count: int
    output_count: int
    found_count: int
    missed: int
    spurious: int
    target_count: int
    targets_found: int
    success: bool
    normalized_rounds: Optional[float]
    max_edge_round_bits: int
    bandwidth: int
    heavy_count: int
    light_count: int
    local_listing: bool
    rivin_ok: bool
    heaviest_node: Optional[int]
    heaviest_output: int
    heaviest_rx_bits: int
    heaviest_rx_bound: float
    aborted_stages: int
    x_sizes: List[int] = field(default_factory=list)
    x_within_chernoff: bool = True
    # per listing-loop stage: measured rounds and the halving-case bound for its |X| and m_bar
    loop_rounds: List[int] = field(default_factory=list)
    loop_round_bounds: List[int] = field(default_factory=list)
    loop_reference: Optional[float] = None


def _run_eps(report: RunReport, fallback: float) -> float:
    if "eps" in report.parameters:
        return float(report.parameters["eps"])
    return fallback


def _x_sizes(report: RunReport) -> Dict[int, int]:
    sizes: Dict[int, int] = {}
    for events in report.traces:
        for event in events:
            if event["event"] == "x_flag":
                sizes.setdefault(event["stage"], 0)
                sizes[event["stage"]] += int(event["in_x"])
    return sizes


def _loop_rounds(
    report: RunReport, x_sizes: Dict[int, int], net: Network
) -> Tuple[List[int], List[int], Optional[float]]:
    """Rounds of every listing-loop stage, its round bound, and the sum of |X| + m_bar log n over them"""
    rounds, bounds = [], []
    reference = 0.0
    for index, stage in enumerate(report.stages):
        if stage.name not in LOOP_STAGES:
            continue
        m_bar = float(stage.parameters["m_bar"])
        x_size = x_sizes.get(index, 0)
        rounds.append(stage.rounds)
        bounds.append(sub_a_round_bound(x_size, m_bar, net))
        reference += x_size + m_bar * log2n(net.n)
    return rounds, bounds, (reference if rounds else None)


def _success(algorithm: str, output: FrozenSet[Triangle], oracle: FrozenSet[Triangle], instance: Instance) -> bool:
    if algorithm == "find":
        return bool(output) == bool(oracle)
    if algorithm == "list":
        return output == oracle
    if algorithm == "idle":
        return True
    if instance.targets:
        return bool(output & instance.targets)
    return not output


def evaluate_run(
    config: ExperimentConfig, instance: Instance, report: RunReport, net: Optional[Network] = None
) -> TrialResult:
    g = instance.graph
    net = net or build_network(g, config.beta)
    oracle = enumerate_triangles(g)
    output = report.output
    eps = _run_eps(report, config.component_eps())
    split = classify_heavy(g, eps)

    sizes = [len(out) for out in report.per_node_outputs]
    heaviest = max(range(g.n), key=lambda v: (sizes[v], -v)) if g.n and max(sizes) > 0 else None
    id_bits = id_bits_for(g.n)

    x_sizes = _x_sizes(report)
    within = True
    for stage_index, size in x_sizes.items():
        stage_eps = report.stages[stage_index].parameters.get("eps", eps)
        within &= size <= chernoff_x_bound(g.n, stage_eps)
    loop_rounds, loop_round_bounds, loop_reference = _loop_rounds(report, x_sizes, net)

    reference = reference_rounds(config.algorithm, g.n, eps)
    return TrialResult(
        seed=report.seed,
        n=g.n,
        m=g.m,
        eps=eps,
        rounds=report.rounds,
        halted=report.halted,
        oracle_count=len(oracle),
        output_count=len(output),
        found_count=len(output & oracle),
        missed=len(oracle - output),
        spurious=len(output - oracle),
        target_count=len(instance.targets),
        targets_found=len(output & instance.targets),
        success=_success(config.algorithm, output, oracle, instance),
        normalized_rounds=report.rounds / reference if reference > 0 else None,
        max_edge_round_bits=report.max_edge_round_bits,
        bandwidth=report.bandwidth,
        heavy_count=len(split.heavy),
        light_count=len(split.light),
        local_listing=is_local_listing(g, dict(enumerate(report.per_node_outputs))),
        rivin_ok=satisfies_rivin(output) and all(satisfies_rivin(out) for out in report.per_node_outputs),
        heaviest_node=heaviest,
        heaviest_output=sizes[heaviest] if heaviest is not None else 0,
        heaviest_rx_bits=report.per_node_rx_bits[heaviest] if heaviest is not None else 0,
        heaviest_rx_bound=rivin_bound(sizes[heaviest]) * id_bits if heaviest is not None else 0.0,
        aborted_stages=sum(stage.aborted for stage in report.stages),
        x_sizes=[x_sizes[s] for s in sorted(x_sizes)],
        x_within_chernoff=within,
        loop_rounds=loop_rounds,
        loop_round_bounds=loop_round_bounds,
        loop_reference=loop_reference,
    )


def run_trial(config: ExperimentConfig, seed: int) -> TrialResult:
    instance = build_instance(config.instance, seed)
    net = build_network(instance.graph, config.beta)
    report = run(net, build_program(config), max_rounds=config.max_rounds, seed=seed)
    return evaluate_run(config, instance, report, net)


@dataclass
class ExperimentReport:
    config: Dict[str, Any]
    runs: List[TrialResult]
    success: RateSummary
    detection: RateSummary
    rounds: Dict[str, Optional[float]]
    normalized_rounds: Dict[str, Optional[float]]
    found: int
    missed: int
    spurious: int
    excluded: int
    rivin_violations: int
    local_listing_runs: int

    @property
    def hard_violation(self) -> bool:
        return self.spurious > 0 or self.rivin_violations > 0 or any(
            r.max_edge_round_bits > r.bandwidth for r in self.runs
        )

    @property
    def passed(self) -> bool:
        return not self.hard_violation and self.success.meets_target is not False

    def table(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(r) for r in self.runs])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config,
            "success": self.success.to_dict(),
            "detection": self.detection.to_dict(),
            "rounds": self.rounds,
            "normalized_rounds": self.normalized_rounds,
            "triangles": {"found": self.found, "missed": self.missed, "spurious": self.spurious},
            "excluded_runs": self.excluded,
            "rivin_violations": self.rivin_violations,
            "local_listing_runs": self.local_listing_runs,
            "passed": self.passed,
            "runs": [asdict(r) for r in self.runs],
        }


def run_trials(config: ExperimentConfig) -> List[TrialResult]:
    progress = dict(total=len(config.seeds), desc=config.algorithm, disable=config.quiet)
    if config.workers > 1 and len(config.seeds) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            return list(tqdm(executor.map(run_trial, repeat(config), config.seeds), **progress))
    return [run_trial(config, seed) for seed in tqdm(config.seeds, **progress)]


def summarize(config: ExperimentConfig, results: List[TrialResult]) -> ExperimentReport:
    halted = [r for r in results if r.halted]
    if len(halted) < len(results):
        logger.warning("%d runs did not halt within %d rounds", len(results) - len(halted), config.max_rounds)
    n = results[0].n if results else config.instance.n
    report = ExperimentReport(
        config=config.to_dict(),
        runs=results,
        success=summarize_rate(sum(r.success for r in results), len(results), success_target(config, n)),
        detection=summarize_rate(sum(r.targets_found for r in results), sum(r.target_count for r in results)),
        rounds=round_summary([r.rounds for r in halted]),
        normalized_rounds=round_summary([r.normalized_rounds for r in halted if r.normalized_rounds is not None]),
        found=sum(r.found_count for r in results),
        missed=sum(r.missed for r in results),
        spurious=sum(r.spurious for r in results),
        excluded=len(results) - len(halted),
        rivin_violations=sum(not r.rivin_ok for r in results),
        local_listing_runs=sum(r.local_listing for r in results),
    )
    logger.info(
        "%s: success %.3f over %d runs, median rounds %s, passed=%s",
        config.algorithm,
        report.success.rate,
        len(results),
        report.rounds["median"],
        report.passed,
    )
    return report


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    if config.algorithm not in RUN_ALGORITHMS:
        raise ConfigurationError(f"{config.algorithm!r} is a lemma check; use verify_lemmas")
    return summarize(config, run_trials(config))
