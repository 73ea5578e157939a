from collections import Counter

import numpy as np
import pytest

from algorithms.analysis import check_trichotomy, classify_triangle, iteration_sets, u_halves
from algorithms.config import a3_round_cap, auto_m_bar
from algorithms.lemmas import not_good_nodes
from algorithms.light import AlgorithmA3, SubAlgorithm, algo_a3, algo_sub_a, iteration_bound, sub_a_round_bound
from congest.engine import run
from congest.network import build_network
from data.features import DeltaIndex, enumerate_triangles
from data.generators import gen_gnp, gen_planted_instance
from data.models import Graph, Triangle
from errors import ConfigurationError, DomainError


def test_empty_x_lists_every_triangle(gnp16):
    report = run(build_network(gnp16), SubAlgorithm([], 100))
    assert report.halted
    assert report.output == enumerate_triangles(gnp16)


def test_full_x_lists_nothing_in_a_clique(k4):
    report = run(build_network(k4), algo_sub_a([True] * 4, 100))
    assert report.halted
    assert report.output == frozenset()
    assert iteration_sets(report).x_members == {0, 1, 2, 3}


def test_tiny_threshold_never_finishes_without_a_cap():
    g = Graph.complete(5)
    report = run(build_network(g), SubAlgorithm([], 1), max_rounds=500)
    assert not report.halted
    assert report.rounds == 500
    assert report.output == frozenset()


def test_rounds_within_the_loop_bound(gnp16):
    net = build_network(gnp16)
    report = run(net, SubAlgorithm([], 100))
    assert report.rounds <= sub_a_round_bound(0, 100, net)
    assert len(iteration_sets(report).passes) <= iteration_bound(16)


def test_iteration_trace_and_trichotomy(gnp16):
    report = run(build_network(gnp16), SubAlgorithm([], 100))
    trace = iteration_sets(report)
    assert trace.x_members == frozenset()
    assert len(trace.passes) == 1
    assert trace.passes[0].u == frozenset(range(16))
    assert trace.passes[0].good == trace.passes[0].u
    assert u_halves(trace)

    check = check_trichotomy(gnp16, report)
    assert check.ok
    assert check.counts["a"] == len(enumerate_triangles(gnp16))


def test_classify_triangle():
    t = Triangle(0, 1, 2)
    u = frozenset({0, 1, 2})
    large = np.full((3, 3), 10)
    members = np.ones((3, 3), dtype=bool)
    assert classify_triangle(t, u, frozenset(), large, members, m_bar=1) == "c"
    assert classify_triangle(t, u, frozenset({0}), large, members, m_bar=1) == "b"

    small = large.copy()
    small[0, 1] = 0
    assert classify_triangle(t, u, frozenset(), small, members, m_bar=1) == "a"

    none = np.zeros((3, 3), dtype=bool)
    assert classify_triangle(t, u, frozenset({0}), np.zeros((3, 3)), none, m_bar=1) is None
    with pytest.raises(DomainError):
        classify_triangle(t, frozenset({0, 1}), frozenset(), large, members, m_bar=1)


def test_a3_lists_every_delta_triangle_with_a_large_threshold():
    g = gen_gnp(32, 0.5, seed=1)
    net = build_network(g)
    a3 = algo_a3(0.5)
    assert a3.m_bar(32) == auto_m_bar(32, 0.5) > 32
    for seed in range(3):
        report = run(net, a3, seed=seed)
        assert report.halted
        x_members = iteration_sets(report).x_members
        expected = DeltaIndex(g, x_members).triangles(enumerate_triangles(g))
        assert expected <= report.output <= enumerate_triangles(g)


def test_a3_parameters():
    a3 = AlgorithmA3(0.5, c_stop=2.0, m_bar=7.0)
    params = a3.parameters(64)
    assert params["m_bar"] == 7.0
    assert params["round_cap"] == a3_round_cap(64, 0.5, 2.0)
    assert params["x_probability"] == pytest.approx(1 / 72)
    with pytest.raises(ConfigurationError):
        AlgorithmA3(0.5, c_stop=0)
    with pytest.raises(ConfigurationError):
        SubAlgorithm([], 0)


def test_a3_stops_at_its_round_cap():
    g = Graph.complete(6)
    report = run(build_network(g), AlgorithmA3(0.5, c_stop=0.1, m_bar=1))
    stage = report.stages[0]
    assert stage.aborted
    assert stage.rounds <= a3_round_cap(6, 0.5, 0.1)
    assert report.halted


def test_trichotomy_with_a_sampled_x():
    g = gen_gnp(48, 0.5, seed=13)
    net = build_network(g)
    a3 = AlgorithmA3(0.5, m_bar=12)
    for seed in range(10):
        report = run(net, a3, seed=seed)
        assert check_trichotomy(g, report).ok
        trace = iteration_sets(report)
        delta = DeltaIndex(g, trace.x_members).matrix
        majority_good = True
        for pass_sets in trace.passes:
            u_mask = np.zeros(g.n, dtype=bool)
            u_mask[sorted(pass_sets.u)] = True
            not_good = set(np.flatnonzero(not_good_nodes(g, delta, u_mask, 12)).tolist())
            assert not_good == pass_sets.u - pass_sets.good
            majority_good = majority_good and len(not_good) <= len(pass_sets.u) / 2
        if majority_good:
            assert u_halves(trace)
            assert len(trace.passes) <= iteration_bound(g.n)


@pytest.mark.slow
def test_a3_lists_sparse_planted_triangles():
    instance = gen_planted_instance(48, "sparse-triangles", seed=3, t=5)
    net = build_network(instance.graph)
    a3 = AlgorithmA3(0.5)
    cap = a3.round_cap(48)
    hits = Counter()
    for seed in range(200):
        report = run(net, a3, seed=seed)
        assert report.rounds <= cap
        hits.update(t for t in instance.planted_triangles if t in report.output)
    assert all(hits[t] / 200 >= 0.4 for t in instance.planted_triangles)
