"""
Seeded instance generators.

Every generator draws from its own np.random.default_rng(seed), consuming the stream in a
fixed order, so the same (parameters, seed) always yields the same graph.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np

from data.models import Edge, Graph, Triangle, make_edge
from errors import DomainError, InfeasibleParametersError

logger = logging.getLogger(__name__)


class PlantedKind(str, Enum):
    HEAVY_EDGE = "heavy-edge"
    SPARSE_TRIANGLES = "sparse-triangles"
    TRIANGLE_FREE = "triangle-free"


@dataclass(frozen=True)
class PlantedInstance:
    """A generated graph together with what was planted in it"""

    graph: Graph
    kind: PlantedKind
    designated_edge: Optional[Edge] = None
    planted_triangles: Tuple[Triangle, ...] = field(default_factory=tuple)


def _check_probability(p: float):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"edge probability must lie in [0, 1], got {p}")


def _random_pairs(rng: np.random.Generator, n: int, p: float) -> List[Edge]:
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.shape[0]) < p
    return [(int(j), int(k)) for j, k in zip(rows[keep], cols[keep])]


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each of the n(n-1)/2 pairs is an edge independently with probability p"""
    if n < 1:
        raise DomainError(f"vertex count must be at least 1, got {n}")
    _check_probability(p)
    rng = np.random.default_rng(seed)
    return Graph.from_edges(n, _random_pairs(rng, n, p))


def _heavy_edge(n: int, h: int, p: float, rng: np.random.Generator) -> PlantedInstance:
    if h < 0 or h + 2 > n:
        raise InfeasibleParametersError(f"heavy-edge with h={h} needs at least {h + 2} vertices, got n={n}")
    order = [int(v) for v in rng.permutation(n)]
    j, k = order[0], order[1]
    witnesses = order[2 : 2 + h]
    edges = set(make_edge(a, b) for a, b in _random_pairs(rng, n, p))
    edges.add(make_edge(j, k))
    for w in witnesses:
        edges.add(make_edge(j, w))
        edges.add(make_edge(k, w))
    graph = Graph.from_edges(n, sorted(edges))
    return PlantedInstance(graph=graph, kind=PlantedKind.HEAVY_EDGE, designated_edge=make_edge(j, k))


def _sparse_triangles(n: int, t: int, p: float, rng: np.random.Generator) -> PlantedInstance:
    if t < 0 or 3 * t > n:
        raise InfeasibleParametersError(f"{t} vertex-disjoint triangles need {3 * t} vertices, got n={n}")
    order = [int(v) for v in rng.permutation(n)]
    planted = [Triangle.of(*order[3 * i : 3 * i + 3]) for i in range(t)]
    planted_vertices = set(order[: 3 * t])
    # planted vertices touch nothing but their own triangle
    edges = set(
        make_edge(a, b) for a, b in _random_pairs(rng, n, p) if a not in planted_vertices and b not in planted_vertices
    )
    for triangle in planted:
        edges.update(triangle.edges)
    graph = Graph.from_edges(n, sorted(edges))
    return PlantedInstance(graph=graph, kind=PlantedKind.SPARSE_TRIANGLES, planted_triangles=tuple(planted))


def _triangle_free(n: int, p: float, rng: np.random.Generator) -> PlantedInstance:
    side = rng.random(n) < 0.5
    edges = [(j, k) for j, k in _random_pairs(rng, n, p) if side[j] != side[k]]
    return PlantedInstance(graph=Graph.from_edges(n, edges), kind=PlantedKind.TRIANGLE_FREE)


_DEFAULT_P = {
    PlantedKind.HEAVY_EDGE: 0.1,
    PlantedKind.SPARSE_TRIANGLES: 0.05,
    PlantedKind.TRIANGLE_FREE: 0.5,
}


def gen_planted_instance(
    n: int, kind: str, seed: int, h: int = 0, t: int = 0, p: Optional[float] = None
) -> PlantedInstance:
    if n < 3:
        raise InfeasibleParametersError(f"planted instances need at least 3 vertices, got n={n}")
    try:
        planted_kind = PlantedKind(kind)
    except ValueError:
        raise DomainError(f"unknown planted instance kind {kind!r}") from None
    edge_probability = _DEFAULT_P[planted_kind] if p is None else p
    _check_probability(edge_probability)
    rng = np.random.default_rng(seed)

    if planted_kind is PlantedKind.HEAVY_EDGE:
        instance = _heavy_edge(n, h, edge_probability, rng)
    elif planted_kind is PlantedKind.SPARSE_TRIANGLES:
        instance = _sparse_triangles(n, t, edge_probability, rng)
    else:
        instance = _triangle_free(n, edge_probability, rng)

    logger.debug("generated %s instance n=%d m=%d seed=%d", planted_kind.value, n, instance.graph.m, seed)
    return instance


def gen_planted(n: int, kind: str, seed: int, h: int = 0, t: int = 0, p: Optional[float] = None) -> Graph:
    return gen_planted_instance(n, kind, seed, h=h, t=t, p=p).graph
