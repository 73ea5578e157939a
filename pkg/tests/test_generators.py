import pytest

from data.features import common_neighbors_count, enumerate_triangles
from data.generators import gen_gnp, gen_planted, gen_planted_instance
from data.models import Graph
from errors import DomainError, InfeasibleParametersError


def test_gnp_is_deterministic():
    assert gen_gnp(30, 0.3, seed=5) == gen_gnp(30, 0.3, seed=5)
    assert gen_gnp(30, 0.3, seed=5) != gen_gnp(30, 0.3, seed=6)


def test_gnp_extremes():
    assert gen_gnp(6, 0.0, seed=1) == Graph.empty(6)
    assert gen_gnp(6, 1.0, seed=1) == Graph.complete(6)


def test_gnp_rejects_bad_arguments():
    with pytest.raises(DomainError):
        gen_gnp(0, 0.5, seed=0)
    with pytest.raises(DomainError):
        gen_gnp(5, 1.5, seed=0)


def test_heavy_edge_has_its_witnesses():
    instance = gen_planted_instance(64, "heavy-edge", seed=3, h=16)
    assert instance.designated_edge is not None
    assert common_neighbors_count(instance.graph, instance.designated_edge) >= 16


def test_sparse_triangles_are_planted_and_isolated():
    instance = gen_planted_instance(30, "sparse-triangles", seed=11, t=5)
    g = instance.graph
    assert len(instance.planted_triangles) == 5
    for triangle in instance.planted_triangles:
        assert g.is_triangle(triangle)
        for v in triangle:
            assert g.degree(v) == 2
    assert set(instance.planted_triangles) <= enumerate_triangles(g)


@pytest.mark.parametrize("seed", range(5))
def test_triangle_free(seed):
    assert enumerate_triangles(gen_planted(40, "triangle-free", seed=seed, p=0.8)) == frozenset()


def test_planted_is_deterministic():
    assert gen_planted(40, "heavy-edge", seed=2, h=8) == gen_planted(40, "heavy-edge", seed=2, h=8)


def test_infeasible_parameters():
    with pytest.raises(InfeasibleParametersError):
        gen_planted(10, "heavy-edge", seed=0, h=9)
    with pytest.raises(InfeasibleParametersError):
        gen_planted(10, "sparse-triangles", seed=0, t=4)
    with pytest.raises(InfeasibleParametersError):
        gen_planted(2, "triangle-free", seed=0)
    with pytest.raises(DomainError):
        gen_planted(10, "star", seed=0)
