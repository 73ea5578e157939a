"""
Experiment configuration: which instances to build, which algorithm to run, how often.

Configurations come from CLI flags or from a JSON document; defaults for the output
directory and worker count come from the environment (CONGEST_OUTPUT_DIR, CONGEST_WORKERS).
"""

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

from algorithms.config import AlgoConfig
from errors import ConfigurationError

RUN_ALGORITHMS = ("a1", "a2", "a3", "find", "list", "idle")
LEMMA_ALGORITHMS = ("lemma1", "lemma2", "lemma3", "lemma4")
ALGORITHMS = RUN_ALGORITHMS + LEMMA_ALGORITHMS

INSTANCE_KINDS = ("gnp", "complete", "heavy-edge", "sparse-triangles", "triangle-free", "file")
OUTPUT_FORMATS = ("report", "csv")

DEFAULT_OUTPUT_DIR = "reports"
DEFAULT_MAX_ROUNDS = 1_000_000
DEFAULT_TRIALS = 500
DEFAULT_HASH_TRIALS = 100_000
# eps for a single heavy or light pass when none is configured
DEFAULT_COMPONENT_EPS = 0.5


def default_output_dir() -> str:
    return os.getenv("CONGEST_OUTPUT_DIR", DEFAULT_OUTPUT_DIR)


def default_workers() -> int:
    raw = os.getenv("CONGEST_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigurationError(f"CONGEST_WORKERS must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class InstanceSpec:
    """
    Generator kind and parameters. With `seed` unset, every run builds a fresh instance from
    its own run seed; otherwise all runs share the instance built from `seed`.
    """

    kind: str = "gnp"
    n: int = 32
    p: Optional[float] = None
    h: int = 0
    t: int = 0
    seed: Optional[int] = None
    graph_file: Optional[str] = None

    def __post_init__(self):
        if self.kind not in INSTANCE_KINDS:
            raise ConfigurationError(f"unknown instance kind {self.kind!r}; expected one of {INSTANCE_KINDS}")
        if self.kind == "file" and not self.graph_file:
            raise ConfigurationError("instance kind 'file' needs a graph file")
        if self.kind != "file" and self.n < 1:
            raise ConfigurationError(f"instance size must be positive, got {self.n}")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ConfigurationError(f"edge probability must lie in [0, 1], got {self.p}")

    def with_n(self, n: int) -> "InstanceSpec":
        return InstanceSpec(**{**asdict(self), "n": n})


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str = "list"
    instance: InstanceSpec = field(default_factory=InstanceSpec)
    seeds: List[int] = field(default_factory=lambda: [0])
    algo: AlgoConfig = field(default_factory=AlgoConfig)
    beta: int = 2
    max_rounds: int = DEFAULT_MAX_ROUNDS
    trials: int = DEFAULT_TRIALS
    hash_trials: int = DEFAULT_HASH_TRIALS
    output_dir: str = field(default_factory=default_output_dir)
    output_name: Optional[str] = None
    output_format: str = "report"
    workers: int = field(default_factory=default_workers)
    quiet: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if not self.seeds:
            raise ConfigurationError("at least one seed is required")
        if any(s < 0 for s in self.seeds):
            raise ConfigurationError("seeds must be non-negative")
        if self.max_rounds < 1:
            raise ConfigurationError(f"max_rounds must be at least 1, got {self.max_rounds}")
        if int(self.beta) != self.beta or self.beta < 2:
            raise ConfigurationError(f"beta must be an integer >= 2, got {self.beta}")
        if self.trials < 1 or self.hash_trials < 1:
            raise ConfigurationError("trial counts must be positive")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"unknown output format {self.output_format!r}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be positive, got {self.workers}")

    def component_eps(self) -> float:
        return self.algo.eps if self.algo.eps is not None else DEFAULT_COMPONENT_EPS

    @property
    def report_name(self) -> str:
        return self.output_name or f"{self.algorithm}-{self.instance.kind}-n{self.instance.n}"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown experiment settings: {sorted(unknown)}")
        values = dict(data)
        if isinstance(values.get("instance"), dict):
            try:
                values["instance"] = InstanceSpec(**values["instance"])
            except TypeError as e:
                raise ConfigurationError(f"bad instance settings: {e}") from None
        if isinstance(values.get("algo"), dict):
            try:
                values["algo"] = AlgoConfig.from_dict(values["algo"])
            except TypeError as e:
                raise ConfigurationError(f"bad algorithm settings: {e}") from None
        if "seeds" in values:
            values["seeds"] = [int(s) for s in values["seeds"]]
        return cls(**values)

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"cannot read experiment config {path}: {e}") from None
        if not isinstance(data, dict):
            raise ConfigurationError(f"experiment config {path} must hold a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
