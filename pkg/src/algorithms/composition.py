"""
Finding and listing programs assembled from the heavy and light passes.

Finding repeats (A1; A3) enough times to push the failure probability below delta.
Listing repeats (A2; A3) c log n times so that every triangle is caught with high probability.
The passes run sequentially, so their rounds add.
"""

import logging
from abc import abstractmethod
from typing import Any, Dict, List, Optional, Tuple

from algorithms.config import (
    AlgoConfig,
    finding_eps,
    finding_repetitions,
    listing_eps,
    listing_repetitions,
    validate_eps,
)
from algorithms.heavy import AlgorithmA1, AlgorithmA2
from algorithms.light import AlgorithmA3
from congest.engine import NodeProgram, ProgramSequence

logger = logging.getLogger(__name__)


class _Repeated(ProgramSequence):
    def __init__(self, config: Optional[AlgoConfig] = None):
        self.config = config or AlgoConfig()

    def eps(self, n: int) -> Dict[str, Any]:
        if self.config.eps is not None:
            return {"eps": validate_eps(self.config.eps), "eps_clamped": False, "eps_source": "config"}
        eps, clamped = self.derived_eps(n)
        if clamped:
            logger.debug("%s: exponent clamped to %s for n=%d", self.name, eps, n)
        return {"eps": eps, "eps_clamped": clamped, "eps_source": "derived"}

    @abstractmethod
    def derived_eps(self, n: int) -> Tuple[float, bool]:
        ...

    @abstractmethod
    def repetitions(self, n: int) -> int:
        ...

    def light_pass(self, eps: float) -> AlgorithmA3:
        return AlgorithmA3(eps, c_stop=self.config.c_stop, m_bar=self.config.m_bar)


class FindTriangle(_Repeated):
    name = "find"

    def derived_eps(self, n: int) -> Tuple[float, bool]:
        return finding_eps(n)

    def repetitions(self, n: int) -> int:
        return finding_repetitions(self.config.delta, self.config.c_rep_find)

    def stages(self, n: int) -> List[NodeProgram]:
        eps = self.eps(n)["eps"]
        stages: List[NodeProgram] = []
        for _ in range(self.repetitions(n)):
            stages += [AlgorithmA1(eps), self.light_pass(eps)]
        return stages

    def parameters(self, n: int) -> Dict[str, Any]:
        return {
            **self.eps(n),
            "delta": self.config.delta,
            "repetitions": self.repetitions(n),
            "c_stop": self.config.c_stop,
            "c_rep": self.config.c_rep_find,
        }


class ListTriangles(_Repeated):
    name = "list"

    def derived_eps(self, n: int) -> Tuple[float, bool]:
        return listing_eps(n)

    def repetitions(self, n: int) -> int:
        return listing_repetitions(n, self.config.c_rep_list)

    def stages(self, n: int) -> List[NodeProgram]:
        eps = self.eps(n)["eps"]
        stages: List[NodeProgram] = []
        for _ in range(self.repetitions(n)):
            stages += [AlgorithmA2(eps), self.light_pass(eps)]
        return stages

    def parameters(self, n: int) -> Dict[str, Any]:
        return {
            **self.eps(n),
            "repetitions": self.repetitions(n),
            "c_stop": self.config.c_stop,
            "c_rep": self.config.c_rep_list,
        }


def find_triangle(delta: float = 0.1, config: Optional[AlgoConfig] = None) -> FindTriangle:
    base = config or AlgoConfig()
    return FindTriangle(AlgoConfig.from_dict({**base.to_dict(), "delta": delta}))


def list_triangles(config: Optional[AlgoConfig] = None) -> ListTriangles:
    return ListTriangles(config)
