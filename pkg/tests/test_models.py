import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from data.models import Graph, Triangle, format_triangles, make_edge
from errors import DomainError


def test_triangle_is_canonical():
    assert Triangle.of(5, 1, 3) == Triangle(1, 3, 5)
    assert Triangle.of(5, 1, 3).edges == ((1, 3), (1, 5), (3, 5))
    assert str(Triangle.of(2, 0, 1)) == "0 1 2"


def test_triangle_rejects_repeated_vertex():
    with pytest.raises(DomainError):
        Triangle.of(1, 1, 2)
    with pytest.raises(DomainError):
        Triangle(2, 1, 3)


def test_make_edge():
    assert make_edge(4, 2) == (2, 4)
    with pytest.raises(DomainError):
        make_edge(3, 3)


def test_from_edges_validates():
    with pytest.raises(DomainError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(DomainError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(DomainError):
        Graph.from_edges(3, [(1, 1)])


def test_complete_graph(k4):
    assert k4.m == 6
    assert k4.neighbors(2) == (0, 1, 3)
    assert k4.degree(0) == 3
    assert k4.is_triangle(Triangle(0, 1, 2))


def test_path_has_no_triangle(path4):
    assert not path4.is_triangle(Triangle(0, 1, 2))
    assert not path4.has_edge(0, 2)
    assert not path4.has_edge(1, 1)


def test_adjacency_matrix_is_read_only(k3):
    matrix = k3.adjacency_matrix
    assert matrix.sum() == 6
    with pytest.raises(ValueError):
        matrix[0, 1] = False


def test_format_triangles_sorted():
    text = format_triangles([Triangle(1, 2, 3), Triangle(0, 1, 2)])
    assert text == "0 1 2\n1 2 3\n"
    assert format_triangles([]) == ""


@given(graphs())
def test_networkx_round_trip(g):
    assert Graph.from_networkx(g.to_networkx()) == g


def test_from_networkx_needs_dense_ids():
    graph = nx.Graph()
    graph.add_edge(1, 2)
    with pytest.raises(DomainError):
        Graph.from_networkx(graph)
