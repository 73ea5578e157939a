import pytest

from algorithms.composition import list_triangles
from algorithms.config import AlgoConfig
from bitstring import to_bits
from congest.context import SYNC, NodeContext
from congest.engine import IdleProgram, NodeProgram, ProgramSequence, node_rng, run
from congest.framing import PhaseTag
from congest.network import Network, build_network, id_bits_for
from data.generators import gen_gnp
from data.models import Graph
from errors import BandwidthFault, ConfigurationError, InvariantViolation, ProtocolError


class Flood(NodeProgram):
    """Every node sends its id to every neighbor in one round"""

    name = "flood"

    def node(self, ctx):
        for k in ctx.neighbors:
            ctx.stage_send(k, to_bits(ctx.id, ctx.id_bits))
        yield
        ctx.record("inbox", senders=sorted(ctx.inbox))


class OneSet(NodeProgram):
    name = "one-set"

    def __init__(self, ids):
        self.ids = ids

    def node(self, ctx):
        if ctx.id == 0:
            ctx.send_set(1, self.ids, PhaseTag.S_SET)
        yield SYNC
        if ctx.id == 1:
            ctx.record("got", ids=list(ctx.read_set(0, PhaseTag.S_SET)))


class Oversend(NodeProgram):
    name = "oversend"

    def node(self, ctx):
        ctx.stage_send(ctx.neighbors[0], "1" * (ctx.bandwidth + 1))
        yield


class ToStranger(NodeProgram):
    name = "stranger"

    def node(self, ctx):
        ctx.stage_send((ctx.id + 2) % ctx.n, "1")
        yield


class ForeverWaiting(NodeProgram):
    name = "forever"

    def node(self, ctx):
        while True:
            yield SYNC


class BadSignal(NodeProgram):
    name = "bad"

    def node(self, ctx):
        yield 5


class Liar(NodeProgram):
    name = "liar"

    def node(self, ctx):
        if ctx.id == 0:
            ctx.emit(0, 1, 2)
        return
        yield


class TwoIdles(ProgramSequence):
    name = "two-idles"

    def stages(self, n):
        return [IdleProgram(2), IdleProgram(3)]


def test_network_bandwidth():
    net = build_network(Graph.complete(256), beta=2)
    assert net.id_bits == 8
    assert net.bandwidth == 16
    assert id_bits_for(1) == 1
    with pytest.raises(ConfigurationError):
        build_network(Graph.complete(3), beta=1)
    with pytest.raises(ConfigurationError):
        build_network(Graph.complete(3), beta=2.5)


def test_flood_on_triangle(k3):
    report = run(build_network(k3), Flood())
    assert report.rounds == 1
    assert report.halted
    assert [t[0]["senders"] for t in report.traces] == [[1, 2], [0, 2], [0, 1]]
    assert report.max_edge_round_bits == id_bits_for(3)
    assert report.per_node_rx_bits == [4, 4, 4]


def test_set_transfer_takes_the_framed_rounds():
    g = Graph.from_edges(256, [(i, i + 1) for i in range(255)])
    net = build_network(g, beta=2)
    ids = list(range(2, 102))
    report = run(net, OneSet(ids))
    assert net.set_transfer_rounds(100) == 51
    assert report.rounds == 51
    assert report.traces[1][0]["ids"] == ids
    assert report.max_edge_round_bits <= net.bandwidth
    assert report.per_edge_bits[(0, 1)] == net.set_frame_bits(100)


def test_bandwidth_fault(k3):
    with pytest.raises(BandwidthFault) as info:
        run(build_network(k3), Oversend())
    assert info.value.capacity == build_network(k3).bandwidth


def test_sending_to_non_neighbor(path4):
    with pytest.raises(BandwidthFault):
        run(build_network(path4), ToStranger())


def test_stalled_program(k3):
    with pytest.raises(ProtocolError):
        run(build_network(k3), ForeverWaiting())


def test_unknown_yield(k3):
    with pytest.raises(ProtocolError):
        run(build_network(k3), BadSignal())


def test_spurious_output_is_an_invariant_violation(path4):
    with pytest.raises(InvariantViolation):
        run(build_network(path4), Liar())


def test_idle_rounds(k3):
    assert run(build_network(k3), IdleProgram(0)).rounds == 0
    assert run(build_network(k3), IdleProgram(1)).rounds == 1
    report = run(build_network(k3), IdleProgram(5), max_rounds=3)
    assert report.rounds == 3
    assert not report.halted
    with pytest.raises(ConfigurationError):
        IdleProgram(-1)


def test_sequential_stages_add_rounds(k3):
    report = run(build_network(k3), TwoIdles())
    assert report.rounds == 5
    assert [stage.rounds for stage in report.stages] == [2, 3]
    assert all(stage.halted and not stage.aborted for stage in report.stages)


def test_budget_stops_a_sequence(k3):
    report = run(build_network(k3), TwoIdles(), max_rounds=4)
    assert report.rounds == 4
    assert not report.halted
    assert [stage.halted for stage in report.stages] == [True, False]


def test_run_validates_arguments(k3):
    with pytest.raises(ConfigurationError):
        run(build_network(k3), IdleProgram(1), seed=-1)
    with pytest.raises(ConfigurationError):
        run(build_network(k3), IdleProgram(1), max_rounds=-1)


def test_runs_are_reproducible():
    net = build_network(gen_gnp(16, 0.5, seed=3))
    first = run(net, list_triangles(), seed=11)
    second = run(net, list_triangles(), seed=11)
    assert first.to_dict(include_traces=True) == second.to_dict(include_traces=True)


def test_node_streams_are_independent():
    a = node_rng(1, 0, 0).random(4)
    assert (a == node_rng(1, 0, 0).random(4)).all()
    assert not (a == node_rng(1, 0, 1).random(4)).all()
    assert not (a == node_rng(1, 1, 0).random(4)).all()


def test_report_serialization(k3):
    data = run(build_network(k3), Flood()).to_dict()
    assert data["per_edge_bits"]["0->1"] == 2
    assert data["output"] == []
    assert data["stages"][0]["name"] == "flood"
    assert "traces" not in data


class View(NodeProgram):
    """Records what a node knows before any communication"""

    name = "view"

    def node(self, ctx):
        ctx.record("view", n=ctx.n, neighbors=list(ctx.neighbors), draw=float(ctx.rng.random()))
        return
        yield


class StageThenWait(NodeProgram):
    name = "stage-then-wait"

    def node(self, ctx):
        for k in ctx.neighbors:
            ctx.stage_send(k, to_bits(ctx.id, ctx.id_bits))
        yield SYNC
        ctx.record("after-barrier", senders=sorted(ctx.inbox))


class FirstPass(ProgramSequence):
    name = "first-pass"

    def __init__(self, program):
        self.program = program

    def stages(self, n):
        return self.program.stages(n)[:2]


def test_initial_view_depends_only_on_incident_edges():
    sparse = Graph.from_edges(5, [(0, 1), (0, 2), (3, 4)])
    dense = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (1, 4), (3, 4)])
    seen_sparse = run(build_network(sparse), View(), seed=4).traces[0]
    seen_dense = run(build_network(dense), View(), seed=4).traces[0]
    assert seen_sparse == seen_dense
    ctx = NodeContext(0, build_network(dense), node_rng(4, 0, 0))
    assert not any(isinstance(value, (Graph, Network)) for value in vars(ctx).values())


def test_staged_bits_arrive_before_the_barrier_releases(k3):
    report = run(build_network(k3), StageThenWait())
    assert report.rounds == 1
    assert [events[0]["senders"] for events in report.traces] == [[1, 2], [0, 2], [0, 1]]


def test_received_bits_stay_within_channel_capacity():
    g = gen_gnp(24, 0.5, seed=2)
    net = build_network(g)
    report = run(net, list_triangles(AlgoConfig(eps=0.5)), seed=1)
    assert sum(report.per_node_rx_bits) > 0
    for v in range(g.n):
        assert report.per_node_rx_bits[v] <= report.rounds * g.degree(v) * net.bandwidth
    assert all(bits <= report.rounds * net.bandwidth for bits in report.per_edge_bits.values())


def test_repeating_passes_only_adds_triangles():
    net = build_network(gen_gnp(24, 0.5, seed=8))
    program = list_triangles(AlgoConfig(eps=0.5))
    for seed in range(3):
        single = run(net, FirstPass(program), seed=seed)
        full = run(net, program, seed=seed)
        assert single.output <= full.output
        assert [stage.rounds for stage in single.stages] == [stage.rounds for stage in full.stages[:2]]
