"""
Static graph-theoretic quantities.

This module computes everything the distributed algorithms are measured against:
the brute-force triangle oracle, per-edge triangle multiplicities m(e), the heavy/light
split of triangles, the pair set Delta(X) and the edge cover P(R) of a triangle set.
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Collection, Dict, Iterable, Mapping, Set

import numpy as np

from data.models import Edge, EdgeSubset, Graph, Triangle, TriangleSet, make_edge
from errors import DomainError


def common_neighbors_count(g: Graph, edge: Edge) -> int:
    """m(e): number of triangles containing the edge, i.e. common neighbors of its endpoints"""
    j, k = edge
    if not g.has_edge(j, k):
        raise DomainError(f"{{{j}, {k}}} is not an edge of the graph")
    return len(g.neighbor_sets[j] & g.neighbor_sets[k])


def enumerate_triangles(g: Graph) -> TriangleSet:
    """Ground-truth T(G) by the edge-iterator method with forward ordering"""
    found = set()
    for j, k in g.edges:
        for l in g.neighbor_sets[j] & g.neighbor_sets[k]:
            if l > k:
                found.add(Triangle(j, k, l))
    return frozenset(found)


def enumerate_triangles_by_scan(g: Graph) -> TriangleSet:
    """Independent O(n^3) triple scan over the adjacency matrix, used to cross-check the oracle"""
    adjacency = g.adjacency_matrix
    found = set()
    for j, k, l in combinations(range(g.n), 3):
        if adjacency[j, k] and adjacency[j, l] and adjacency[k, l]:
            found.add(Triangle(j, k, l))
    return frozenset(found)


def triangles_from_edges(edges: Iterable[Edge]) -> TriangleSet:
    """All triples whose three pairs all occur in the given edge collection"""
    adjacency: Dict[int, Set[int]] = {}
    canonical = set()
    for j, k in edges:
        edge = make_edge(j, k)
        canonical.add(edge)
        adjacency.setdefault(edge[0], set()).add(edge[1])
        adjacency.setdefault(edge[1], set()).add(edge[0])
    found = set()
    for j, k in canonical:
        for l in adjacency[j] & adjacency[k]:
            if l > k:
                found.add(Triangle(j, k, l))
    return frozenset(found)


def heavy_threshold(n: int, eps: float) -> float:
    """n^eps, kept real so integer counts are compared against it without rounding"""
    return float(n) ** eps


@dataclass(frozen=True)
class HeavyLightSplit:
    """Partition of T(G) into eps-heavy and light triangles"""

    eps: float
    threshold: float
    heavy: TriangleSet
    light: TriangleSet


def classify_heavy(g: Graph, eps: float) -> HeavyLightSplit:
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"eps must lie in [0, 1], got {eps}")
    threshold = heavy_threshold(g.n, eps)
    multiplicity: Dict[Edge, int] = {}
    heavy = set()
    light = set()
    for triangle in enumerate_triangles(g):
        is_heavy = False
        for edge in triangle.edges:
            if edge not in multiplicity:
                multiplicity[edge] = common_neighbors_count(g, edge)
            if multiplicity[edge] >= threshold:
                is_heavy = True
        (heavy if is_heavy else light).add(triangle)
    return HeavyLightSplit(eps=eps, threshold=threshold, heavy=frozenset(heavy), light=frozenset(light))


def in_delta(g: Graph, x_set: Collection[int], pair: Edge) -> bool:
    """True iff no vertex of X is adjacent to both endpoints of the pair (pair may be a non-edge)"""
    j, l = pair
    if j == l:
        raise DomainError(f"pair {{{j}, {l}}} is not a pair of distinct vertices")
    neighbors_j = g.neighbor_sets[j]
    neighbors_l = g.neighbor_sets[l]
    return not any(x in neighbors_j and x in neighbors_l for x in x_set)


class DeltaIndex:
    """
    Precomputed Delta(X) membership for all pairs at once.

    covered[j, l] is True when j and l share a neighbor in X; Delta(X) is the complement
    (off the diagonal). Used wherever Delta(X) is queried in bulk.
    """

    def __init__(self, g: Graph, x_set: Iterable[int]):
        self.graph = g
        self.members = frozenset(x_set)
        rows = g.adjacency_matrix[sorted(self.members)]
        covered = (rows.T.astype(np.int32) @ rows.astype(np.int32)) > 0
        self.matrix = ~covered
        np.fill_diagonal(self.matrix, False)
        self.matrix.setflags(write=False)

    def contains(self, j: int, l: int) -> bool:
        return bool(self.matrix[j, l])

    def contains_triangle(self, triangle: Triangle) -> bool:
        return all(self.matrix[j, k] for j, k in triangle.edges)

    def triangles(self, triangles: Iterable[Triangle]) -> TriangleSet:
        return frozenset(t for t in triangles if self.contains_triangle(t))


def edge_cover(triangles: Iterable[Triangle]) -> EdgeSubset:
    """P(R): every edge lying in some triangle of R"""
    return frozenset(edge for triangle in triangles for edge in triangle.edges)


def rivin_bound(triangle_count: int) -> float:
    """Minimum edge count (sqrt(2)/3)|R|^(2/3) of any graph containing |R| triangles"""
    return math.sqrt(2.0) / 3.0 * triangle_count ** (2.0 / 3.0)


def satisfies_rivin(triangles: Collection[Triangle]) -> bool:
    return len(edge_cover(triangles)) >= rivin_bound(len(triangles))


def triangles_by_vertex(triangles: Iterable[Triangle]) -> Dict[int, Set[Triangle]]:
    index: Dict[int, Set[Triangle]] = {}
    for triangle in triangles:
        for vertex in triangle:
            index.setdefault(vertex, set()).add(triangle)
    return index


def is_local_listing(g: Graph, per_node_outputs: Mapping[int, Collection[Triangle]]) -> bool:
    """Whether every node output all the triangles containing itself"""
    by_vertex = triangles_by_vertex(enumerate_triangles(g))
    for vertex, own in by_vertex.items():
        if not own <= set(per_node_outputs.get(vertex, ())):
            return False
    return True


def common_neighbor_matrix(g: Graph) -> np.ndarray:
    """m({j, l}) for every pair, edge or not"""
    adjacency = g.adjacency_matrix.astype(np.int32)
    counts = adjacency @ adjacency
    np.fill_diagonal(counts, 0)
    return counts
