from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, List, Tuple

import networkx as nx
import numpy as np

from errors import DomainError

Edge = Tuple[int, int]


def make_edge(j: int, k: int) -> Edge:
    """Canonical (smaller, larger) form of the unordered pair {j, k}"""
    if j == k:
        raise DomainError(f"pair {{{j}, {k}}} is not a pair of distinct vertices")
    return (j, k) if j < k else (k, j)


@dataclass(frozen=True, order=True)
class Triangle:
    """Unordered triple of distinct vertices, stored with a < b < c"""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not self.a < self.b < self.c:
            raise DomainError(f"triangle ({self.a}, {self.b}, {self.c}) is not in canonical order")

    @classmethod
    def of(cls, j: int, k: int, l: int) -> "Triangle":
        a, b, c = sorted((j, k, l))
        if a == b or b == c:
            raise DomainError(f"triple ({j}, {k}, {l}) repeats a vertex")
        return cls(a, b, c)

    @property
    def vertices(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def edges(self) -> Tuple[Edge, Edge, Edge]:
        return ((self.a, self.b), (self.a, self.c), (self.b, self.c))

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __str__(self) -> str:
        return f"{self.a} {self.b} {self.c}"


TriangleSet = FrozenSet[Triangle]
EdgeSubset = FrozenSet[Edge]


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on the dense vertex ids 0..n-1.

    Instances are read-only after construction; derived structures (adjacency sets, the
    numpy adjacency matrix) are computed lazily and cached, so concurrent readers are safe.
    """

    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n}")
        canonical = set()
        neighbors: List[List[int]] = [[] for _ in range(n)]
        for j, k in edges:
            if not (0 <= j < n and 0 <= k < n):
                raise DomainError(f"edge {{{j}, {k}}} has an endpoint outside 0..{n - 1}")
            edge = make_edge(j, k)
            if edge in canonical:
                raise DomainError(f"duplicate edge {{{j}, {k}}}")
            canonical.add(edge)
            neighbors[j].append(k)
            neighbors[k].append(j)
        adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbors)
        return cls(n=n, edges=frozenset(canonical), adjacency=adjacency)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(j, k) for j in range(n) for k in range(j + 1, n)])

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        n = graph.number_of_nodes()
        if set(graph.nodes) != set(range(n)):
            raise DomainError("networkx graph nodes must be exactly 0..n-1")
        return cls.from_edges(n, graph.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    @cached_property
    def neighbor_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    @cached_property
    def adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            rows, cols = zip(*self.edges)
            matrix[rows, cols] = True
            matrix[cols, rows] = True
        matrix.setflags(write=False)
        return matrix

    def has_edge(self, j: int, k: int) -> bool:
        return j != k and k in self.neighbor_sets[j]

    def is_triangle(self, triangle: Triangle) -> bool:
        return all(self.has_edge(j, k) for j, k in triangle.edges)


def format_triangles(triangles: Iterable[Triangle]) -> str:
    """Canonical text form: one "j k l" line per triangle, sorted lexicographically"""
    return "".join(f"{t}\n" for t in sorted(triangles))
