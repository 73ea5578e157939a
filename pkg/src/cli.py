"""
Command-line surface of the experiment harness.

    run     run one algorithm over a seed list and compare every run with the oracle
    scale   median rounds over a grid of n, normalized by the reference curve
    lemmas  Monte-Carlo checks of the probabilistic lemmas
    oracle  brute-force triangle listing of one instance

Exit codes: 0 all checks passed, 1 a statistical check failed, 2 a hard invariant was
violated, 3 bad configuration or input.
"""

import argparse
import logging
from dataclasses import replace
from typing import Any, Dict, List, Optional, Sequence

from algorithms.config import AlgoConfig
from data.features import classify_heavy, enumerate_triangles
from data.repositories import ReportRepository
from errors import (
    ConfigurationError,
    DomainError,
    GraphFormatError,
    InfeasibleParametersError,
    InvariantViolation,
    ProtocolError,
)
from experiments.config import (
    INSTANCE_KINDS,
    LEMMA_ALGORITHMS,
    OUTPUT_FORMATS,
    RUN_ALGORITHMS,
    ExperimentConfig,
)
from experiments.lemmas import verify_lemmas
from experiments.runner import build_instance, run_experiment
from experiments.scaling import scaling_study

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_STATISTICAL = 1
EXIT_INVARIANT = 2
EXIT_CONFIG = 3


def parse_seeds(values: Sequence[str]) -> List[int]:
    """Seeds as plain integers or half-open ranges "a:b"."""
    seeds: List[int] = []
    for value in values:
        try:
            if ":" in value:
                start, stop = value.split(":", 1)
                seeds.extend(range(int(start), int(stop)))
            else:
                seeds.append(int(value))
        except ValueError:
            raise ConfigurationError(f"bad seed {value!r}; expected an integer or a range a:b") from None
    return seeds


def _add_instance_args(p: argparse.ArgumentParser, multiple_n: bool = False):
    p.add_argument("--kind", choices=INSTANCE_KINDS, help="instance generator")
    if multiple_n:
        p.add_argument("--n", type=int, nargs="+", required=True, help="ascending grid of network sizes")
    else:
        p.add_argument("--n", type=int, help="number of nodes")
    p.add_argument("--p", type=float, help="edge probability")
    p.add_argument("--h", type=int, help="planted common neighbors of the heavy edge")
    p.add_argument("--t", type=int, help="planted triangles of a sparse instance")
    p.add_argument("--graph-file", help="edge-list file for --kind file")
    p.add_argument("--instance-seed", type=int, help="build one shared instance from this seed")


def _add_common_args(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON experiment config; flags override its values")
    p.add_argument("--seed", "--seeds", dest="seeds", nargs="+", help="seeds, e.g. 0 1 2 or 0:100")
    p.add_argument("--eps", type=float, help="eps of a single A1/A2/A3 pass")
    p.add_argument("--m-bar", type=float, help="good-node threshold of the light pass")
    p.add_argument("--delta", type=float, help="failure probability of find")
    p.add_argument("--beta", type=int, help="bandwidth multiplier, B = beta * id_bits")
    p.add_argument("--trials", type=int, help="Monte-Carlo samples per lemma check")
    p.add_argument("--hash-trials", type=int, help="hash samples for the hash-pair check")
    p.add_argument("--max-rounds", type=int, help="global round budget per run")
    p.add_argument("--out", help="output directory (default: $CONGEST_OUTPUT_DIR or ./reports)")
    p.add_argument("--name", help="report file name without extension")
    p.add_argument("--format", choices=OUTPUT_FORMATS, help="report (JSON) or csv table")
    p.add_argument("--workers", type=int, help="worker processes for independent trials")
    p.add_argument("--quiet", action="store_true", help="no progress bars")


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors are configuration errors, so they share exit code 3"""

    def error(self, message: str):
        raise ConfigurationError(f"{self.prog}: {message}")


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = ArgumentParser(prog="congest-triangles", description=__doc__,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    run_p = commands.add_parser("run", help="run an algorithm against the oracle")
    run_p.add_argument("--algo", choices=RUN_ALGORITHMS, help="algorithm to run")
    _add_instance_args(run_p)
    _add_common_args(run_p)

    scale_p = commands.add_parser("scale", help="round scaling over a grid of n")
    scale_p.add_argument("--algo", choices=RUN_ALGORITHMS, help="algorithm to run")
    _add_instance_args(scale_p, multiple_n=True)
    _add_common_args(scale_p)

    lemma_p = commands.add_parser("lemmas", help="statistical lemma checks")
    lemma_p.add_argument("--which", nargs="+", choices=LEMMA_ALGORITHMS, help="subset of checks (default: all)")
    _add_common_args(lemma_p)

    oracle_p = commands.add_parser("oracle", help="list every triangle of one instance")
    _add_instance_args(oracle_p)
    _add_common_args(oracle_p)

    return parser.parse_args(argv)


def _overrides(args: argparse.Namespace, names: Dict[str, str]) -> Dict[str, Any]:
    return {field: getattr(args, arg) for arg, field in names.items() if getattr(args, arg, None) is not None}


def build_config(args: argparse.Namespace, algorithm: Optional[str] = None) -> ExperimentConfig:
    """Config file first, then every flag that was given"""
    base = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()

    instance = base.instance
    instance_changes = _overrides(
        args, {"kind": "kind", "p": "p", "h": "h", "t": "t", "graph_file": "graph_file", "instance_seed": "seed"}
    )
    n = getattr(args, "n", None)
    if isinstance(n, int):
        instance_changes["n"] = n
    if instance_changes:
        instance = replace(instance, **instance_changes)

    algo_changes = _overrides(args, {"eps": "eps", "m_bar": "m_bar", "delta": "delta"})
    algo = AlgoConfig.from_dict({**base.algo.to_dict(), **algo_changes}) if algo_changes else base.algo

    changes = _overrides(
        args,
        {
            "beta": "beta",
            "trials": "trials",
            "hash_trials": "hash_trials",
            "max_rounds": "max_rounds",
            "out": "output_dir",
            "name": "output_name",
            "format": "output_format",
            "workers": "workers",
        },
    )
    if args.seeds:
        changes["seeds"] = parse_seeds(args.seeds)
    if args.quiet:
        changes["quiet"] = True
    if algorithm is not None:
        changes["algorithm"] = algorithm
    return replace(base, instance=instance, algo=algo, **changes)


def cmd_run(args: argparse.Namespace) -> int:
    config = build_config(args, args.algo)
    report = run_experiment(config)
    repo = ReportRepository(config.output_dir)
    if config.output_format == "csv":
        repo.save_table(f"{config.report_name}.csv", report.table())
    else:
        repo.save_report(f"{config.report_name}.json", report.to_dict())

    print(
        f"{config.algorithm}: {report.success.successes}/{report.success.trials} successful runs, "
        f"found {report.found}, missed {report.missed}, spurious {report.spurious}, "
        f"median rounds {report.rounds['median']}"
    )
    if report.hard_violation:
        return EXIT_INVARIANT
    return EXIT_OK if report.passed else EXIT_STATISTICAL


def cmd_scale(args: argparse.Namespace) -> int:
    config = build_config(args, args.algo)
    report = scaling_study(config.algorithm, args.n, config.seeds, beta=config.beta, base=config)
    repo = ReportRepository(config.output_dir)
    name = config.output_name or f"scale-{config.algorithm}-{config.instance.kind}-beta{config.beta}"
    if config.output_format == "csv":
        repo.save_table(f"{name}.csv", report.table)
    else:
        repo.save_report(f"{name}.json", report.to_dict())

    print(report.table.to_string(index=False))
    print(f"ratio spread {report.ratio_spread}, fitted exponent {report.fitted_exponent}")
    return EXIT_OK if report.passed else EXIT_STATISTICAL


def cmd_lemmas(args: argparse.Namespace) -> int:
    config = build_config(args)
    report = verify_lemmas(config, args.which)
    name = config.output_name or "lemmas"
    ReportRepository(config.output_dir).save_report(f"{name}.json", report.to_dict())

    for check in report.checks:
        status = "ok" if check.passed else "FAILED"
        print(f"{check.name:28s} {check.observed:.5f} {check.comparison} {check.bound:.5f}  {status}")
    edge_cover = [c for c in report.checks if c.name == "edge-cover"]
    if edge_cover and not edge_cover[0].passed:
        return EXIT_INVARIANT
    return EXIT_OK if report.passed else EXIT_STATISTICAL


def cmd_oracle(args: argparse.Namespace) -> int:
    config = build_config(args)
    instance = build_instance(config.instance, config.seeds[0])
    triangles = enumerate_triangles(instance.graph)
    eps = config.component_eps()
    split = classify_heavy(instance.graph, eps)

    name = config.output_name or f"oracle-{config.instance.kind}-n{instance.graph.n}"
    repo = ReportRepository(config.output_dir)
    repo.save_triangles(f"{name}.txt", triangles)
    repo.save_report(
        f"{name}.json",
        {
            "n": instance.graph.n,
            "m": instance.graph.m,
            "triangles": len(triangles),
            "eps": eps,
            "heavy": len(split.heavy),
            "light": len(split.light),
        },
    )
    print(f"n={instance.graph.n} m={instance.graph.m} triangles={len(triangles)} "
          f"heavy={len(split.heavy)} light={len(split.light)}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "scale": cmd_scale, "lemmas": cmd_lemmas, "oracle": cmd_oracle}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except (InvariantViolation, ProtocolError) as e:
        logger.error("Hard invariant violated: %s", e)
        return EXIT_INVARIANT
    except (ConfigurationError, GraphFormatError, InfeasibleParametersError, DomainError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
