import math

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from data.features import (
    DeltaIndex,
    classify_heavy,
    common_neighbor_matrix,
    common_neighbors_count,
    edge_cover,
    enumerate_triangles,
    enumerate_triangles_by_scan,
    in_delta,
    is_local_listing,
    rivin_bound,
    satisfies_rivin,
    triangles_by_vertex,
    triangles_from_edges,
)
from data.models import Graph, Triangle
from errors import DomainError


def test_k4_has_four_triangles(k4):
    assert len(enumerate_triangles(k4)) == 4


def test_path_has_none(path4):
    assert enumerate_triangles(path4) == frozenset()


@given(graphs())
def test_oracle_agrees_with_scan_and_networkx(g):
    oracle = enumerate_triangles(g)
    assert oracle == enumerate_triangles_by_scan(g)
    assert len(oracle) == sum(nx.triangles(g.to_networkx()).values()) // 3


@given(graphs())
def test_triangles_from_all_edges_is_the_oracle(g):
    assert triangles_from_edges(g.edges) == enumerate_triangles(g)


def test_common_neighbors_count(k4, path4):
    assert common_neighbors_count(k4, (0, 1)) == 2
    assert common_neighbors_count(path4, (1, 2)) == 0
    with pytest.raises(DomainError):
        common_neighbors_count(path4, (0, 2))


@given(graphs())
def test_common_neighbor_matrix_matches_edge_counts(g):
    counts = common_neighbor_matrix(g)
    for j, k in g.edges:
        assert counts[j, k] == common_neighbors_count(g, (j, k))


def test_heavy_split_of_k4(k4):
    # every edge of K4 lies in 2 triangles
    assert classify_heavy(k4, 0.0).heavy == enumerate_triangles(k4)
    split = classify_heavy(k4, 1.0)
    assert split.threshold == 4.0
    assert split.heavy == frozenset()
    assert len(split.light) == 4
    with pytest.raises(DomainError):
        classify_heavy(k4, 1.5)


def test_delta_of_k4():
    g = Graph.complete(4)
    assert in_delta(g, [], (0, 1))
    # 2 is adjacent to both 0 and 1
    assert not in_delta(g, [2], (0, 1))
    # an endpoint is never its own common neighbor
    assert in_delta(g, [0], (0, 1))


@given(graphs(max_n=8), st.data())
def test_delta_index_agrees_with_pairwise_check(g, data):
    x_set = data.draw(st.sets(st.integers(0, max(0, g.n - 1)), max_size=g.n)) if g.n else set()
    index = DeltaIndex(g, x_set)
    for j in range(g.n):
        for l in range(g.n):
            if j != l:
                assert index.contains(j, l) == in_delta(g, x_set, (j, l))


def test_rivin_bound():
    assert rivin_bound(0) == 0.0
    assert math.isclose(rivin_bound(8), math.sqrt(2) / 3 * 4)


@given(graphs())
def test_edge_cover_satisfies_rivin(g):
    triangles = enumerate_triangles(g)
    assert edge_cover(triangles) <= g.edges
    assert satisfies_rivin(triangles)


def test_local_listing(k4):
    everything = enumerate_triangles(k4)
    by_vertex = triangles_by_vertex(everything)
    assert len(by_vertex[0]) == 3
    assert is_local_listing(k4, {v: by_vertex[v] for v in range(4)})
    assert not is_local_listing(k4, {0: everything})
    assert is_local_listing(Graph.empty(3), {})


def test_triangles_from_edges_needs_all_three():
    assert triangles_from_edges([(0, 1), (1, 2)]) == frozenset()
    assert triangles_from_edges([(0, 1), (2, 1), (0, 2)]) == {Triangle(0, 1, 2)}
