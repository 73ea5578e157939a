import pytest

from algorithms.composition import FindTriangle, ListTriangles, find_triangle, list_triangles
from algorithms.config import AlgoConfig, finding_repetitions, listing_repetitions
from algorithms.heavy import AlgorithmA1, AlgorithmA2
from algorithms.light import AlgorithmA3
from congest.engine import run
from congest.network import build_network
from data.features import enumerate_triangles
from data.generators import gen_gnp, gen_planted
from errors import ConfigurationError


def test_find_stages_alternate():
    program = find_triangle(delta=0.1)
    stages = program.stages(64)
    assert len(stages) == 2 * finding_repetitions(0.1) == 28
    assert isinstance(stages[0], AlgorithmA1)
    assert isinstance(stages[1], AlgorithmA3)


def test_list_stages_alternate():
    program = list_triangles()
    stages = program.stages(64)
    assert len(stages) == 2 * listing_repetitions(64) == 36
    assert isinstance(stages[0], AlgorithmA2)
    assert isinstance(stages[-1], AlgorithmA3)


def test_eps_is_derived_and_clamped():
    params = ListTriangles().parameters(32)
    assert params["eps"] == 0.0
    assert params["eps_clamped"]
    assert params["eps_source"] == "derived"

    params = FindTriangle(AlgoConfig(eps=0.3)).parameters(32)
    assert params["eps"] == 0.3
    assert params["eps_source"] == "config"
    assert params["repetitions"] == finding_repetitions(0.1)


def test_find_triangle_validates_delta():
    with pytest.raises(ConfigurationError):
        find_triangle(delta=1.0)


def test_find_on_k4(k4):
    report = run(build_network(k4), find_triangle(0.1), seed=2)
    assert report.found
    assert report.halted
    assert len(report.stages) == 28


def test_find_on_triangle_free_graph():
    g = gen_planted(32, "triangle-free", seed=6, p=0.5)
    for seed in range(3):
        assert not run(build_network(g), find_triangle(0.1), seed=seed).found


def test_list_matches_the_oracle():
    g = gen_gnp(24, 0.5, seed=9)
    report = run(build_network(g), list_triangles(), seed=1)
    assert report.output == enumerate_triangles(g)
    assert report.rounds == sum(stage.rounds for stage in report.stages)


def test_list_respects_a_global_budget(gnp16):
    report = run(build_network(gnp16), list_triangles(), max_rounds=10)
    assert report.rounds == 10
    assert not report.halted
    assert report.output <= enumerate_triangles(gnp16)


def test_configured_constants_reach_the_light_pass():
    program = list_triangles(AlgoConfig(eps=0.5, c_stop=2.0, m_bar=9.0))
    light = program.stages(64)[1]
    assert light.c_stop == 2.0
    assert light.m_bar(64) == 9.0
    assert program.repetitions(64) == listing_repetitions(64, AlgoConfig().c_rep_list)
