"""
Round-synchronous execution of node programs over a CONGEST network.

Each loop iteration steps every running node in id order, then moves at most B bits over
every directed channel; staged raw payloads go first and framed streams fill the rest.
Nodes parked at a barrier are released once no node is running and every stream is
drained. While all live nodes are parked, streams are drained in bulk and charged the
rounds the stepwise transfer would have taken.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Generator, List, Optional, Sequence, Tuple, Union

import numpy as np

from congest.context import SYNC, NodeContext
from congest.network import Network
from data.models import Edge, Triangle, format_triangles
from errors import ConfigurationError, InvariantViolation, ProtocolError

logger = logging.getLogger(__name__)

NodeGenerator = Generator[Any, None, None]

# iterations that move no bits and end no round before a program is considered stuck
STALL_LIMIT = 10_000


class NodeProgram(ABC):
    """A distributed algorithm: one generator per node, driven by the engine"""

    name = "program"

    @abstractmethod
    def node(self, ctx: NodeContext) -> NodeGenerator:
        ...

    def round_cap(self, n: int) -> Optional[int]:
        """Rounds after which the program stops itself; None for no cap"""
        return None

    def parameters(self, n: int) -> Dict[str, Any]:
        return {}


class ProgramSequence(ABC):
    """Programs run one after another; each starts once the previous one has globally halted"""

    name = "sequence"

    @abstractmethod
    def stages(self, n: int) -> List[NodeProgram]:
        ...

    def parameters(self, n: int) -> Dict[str, Any]:
        return {}


Program = Union[NodeProgram, ProgramSequence]


class IdleProgram(NodeProgram):
    """Every node ends `rounds` rounds without sending anything, then halts"""

    name = "idle"

    def __init__(self, rounds: int = 1):
        if rounds < 0:
            raise ConfigurationError(f"idle rounds must be non-negative, got {rounds}")
        self.rounds = rounds

    def node(self, ctx: NodeContext) -> NodeGenerator:
        for _ in range(self.rounds):
            yield

    def parameters(self, n: int) -> Dict[str, Any]:
        return {"rounds": self.rounds}


class NodeState(Enum):
    RUNNING = "running"
    WAITING = "waiting"
    HALTED = "halted"


@dataclass
class StageReport:
    name: str
    rounds: int
    halted: bool
    aborted: bool
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_size: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "rounds": self.rounds,
            "halted": self.halted,
            "aborted": self.aborted,
            "parameters": self.parameters,
            "output_size": self.output_size,
        }


@dataclass
class RunReport:
    program: str
    seed: int
    n: int
    bandwidth: int
    rounds: int
    per_node_rx_bits: List[int]
    per_edge_bits: Dict[Edge, int]
    max_edge_round_bits: int
    output: FrozenSet[Triangle]
    per_node_outputs: List[FrozenSet[Triangle]]
    halted: bool
    stages: List[StageReport] = field(default_factory=list)
    traces: List[List[Dict[str, Any]]] = field(default_factory=list)
    parameters: Dict[str, Any] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return bool(self.output)

    def to_dict(self, include_traces: bool = False) -> Dict[str, Any]:
        report = {
            "program": self.program,
            "seed": self.seed,
            "n": self.n,
            "bandwidth": self.bandwidth,
            "rounds": self.rounds,
            "halted": self.halted,
            "max_edge_round_bits": self.max_edge_round_bits,
            "per_node_rx_bits": list(self.per_node_rx_bits),
            "per_edge_bits": {f"{u}->{v}": bits for (u, v), bits in sorted(self.per_edge_bits.items())},
            "output": format_triangles(self.output).splitlines(),
            "per_node_output_sizes": [len(out) for out in self.per_node_outputs],
            "stages": [stage.to_dict() for stage in self.stages],
            "parameters": self.parameters,
        }
        if include_traces:
            report["traces"] = self.traces
        return report


class _Ledger:
    def __init__(self, n: int):
        self.rounds = 0
        self.per_node_rx_bits = [0] * n
        self.per_edge_bits: Dict[Edge, int] = {}
        self.max_edge_round_bits = 0

    def charge(self, sender: int, receiver: int, bits: int, first_round_bits: int):
        self.per_node_rx_bits[receiver] += bits
        self.per_edge_bits[(sender, receiver)] = self.per_edge_bits.get((sender, receiver), 0) + bits
        self.max_edge_round_bits = max(self.max_edge_round_bits, first_round_bits)


def node_rng(seed: int, stage_index: int, node_id: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(stage_index, node_id)))


class _Stage:
    """One program executing on every node of the network"""

    def __init__(self, net: Network, program: NodeProgram, stage_index: int, seed: int, ledger: _Ledger):
        self.net = net
        self.program = program
        self.ledger = ledger
        self.contexts = [NodeContext(v, net, node_rng(seed, stage_index, v)) for v in range(net.n)]
        self.generators = [program.node(ctx) for ctx in self.contexts]
        self.states = [NodeState.RUNNING] * net.n

    def _step(self, v: int) -> bool:
        """Advance node v to its next yield; True when it explicitly ended a round"""
        ctx = self.contexts[v]
        ctx.round = self.ledger.rounds
        try:
            signal = next(self.generators[v])
        except StopIteration:
            self.states[v] = NodeState.HALTED
            return False
        finally:
            ctx._clear_inbox()
        if signal is SYNC:
            self.states[v] = NodeState.WAITING
            return False
        if signal is not None:
            raise ProtocolError(f"node {v} yielded {signal!r}; expected a bare yield or SYNC")
        return True

    def _collect_round(self) -> List[Tuple[int, int, str, str]]:
        transfers = []
        for ctx in self.contexts:
            for neighbor in ctx._pending_channels():
                raw, framed = ctx._transmit(neighbor, self.net.bandwidth)
                if raw or framed:
                    transfers.append((ctx.id, neighbor, raw, framed))
        return transfers

    def _deliver(self, transfers: Sequence[Tuple[int, int, str, str]]):
        for sender, receiver, raw, framed in transfers:
            bits = len(raw) + len(framed)
            if bits > self.net.bandwidth:
                raise InvariantViolation(f"{bits} bits on {sender}->{receiver} exceed B={self.net.bandwidth}")
            self.contexts[receiver]._deliver(sender, raw, framed)
            self.ledger.charge(sender, receiver, bits, bits)

    def _drain(self, allowed: float) -> Tuple[int, bool]:
        """Deliver every queued stream in bulk, spending at most `allowed` rounds"""
        backlog = {ctx.id: ctx._stream_backlog() for ctx in self.contexts}
        needed = max((self.net.rounds_for_bits(p) for per in backlog.values() for p in per.values()), default=0)
        spent = min(needed, allowed)
        capacity = spent * self.net.bandwidth
        for sender, per in backlog.items():
            ctx = self.contexts[sender]
            for receiver, pending in sorted(per.items()):
                _, framed = ctx._transmit(receiver, capacity)
                if framed:
                    self.contexts[receiver]._deliver(sender, "", framed)
                    self.ledger.charge(sender, receiver, len(framed), min(self.net.bandwidth, pending))
        self.ledger.rounds += spent
        return spent, needed > allowed

    def _streams_idle(self) -> bool:
        return not any(ctx._stream_backlog() for ctx in self.contexts)

    def execute(self, budget: float) -> Tuple[int, bool]:
        """Run until global halt or until `budget` rounds are spent. Returns (rounds, halted)."""
        start = self.ledger.rounds
        stalled = 0
        while True:
            running = [v for v, state in enumerate(self.states) if state is NodeState.RUNNING]
            if not running:
                waiting = [v for v, state in enumerate(self.states) if state is NodeState.WAITING]
                if not waiting:
                    return self.ledger.rounds - start, True
                if not self._streams_idle():
                    allowed = budget - (self.ledger.rounds - start)
                    _, exhausted = self._drain(allowed)
                    if exhausted:
                        return self.ledger.rounds - start, False
                for v in waiting:
                    self.states[v] = NodeState.RUNNING
                continue

            ended = False
            for v in running:
                ended |= self._step(v)
            transfers = self._collect_round()
            if not transfers and not ended:
                stalled += 1
                if stalled > STALL_LIMIT:
                    raise ProtocolError(f"{self.program.name} made no progress for {STALL_LIMIT} iterations")
                continue
            stalled = 0
            if self.ledger.rounds - start + 1 > budget:
                return self.ledger.rounds - start, False
            self._deliver(transfers)
            self.ledger.rounds += 1

    def outputs(self) -> List[FrozenSet[Triangle]]:
        return [frozenset(ctx.output) for ctx in self.contexts]


def _stages_of(program: Program, n: int) -> List[NodeProgram]:
    if isinstance(program, ProgramSequence):
        return program.stages(n)
    if isinstance(program, NodeProgram):
        return [program]
    raise ConfigurationError(f"not a node program: {program!r}")


def run(net: Network, program: Program, max_rounds: Optional[int] = None, seed: int = 0) -> RunReport:
    """
    Execute `program` on every node of `net`. The run is a pure function of
    (graph, program, seed); it ends when every node has halted or after `max_rounds` rounds,
    in which case the report says halted=False and carries the output produced so far.
    """
    if max_rounds is not None and max_rounds < 0:
        raise ConfigurationError(f"max_rounds must be non-negative, got {max_rounds}")
    if seed < 0:
        raise ConfigurationError(f"seed must be non-negative, got {seed}")

    n = net.n
    limit = math.inf if max_rounds is None else max_rounds
    ledger = _Ledger(n)
    per_node: List[set] = [set() for _ in range(n)]
    traces: List[List[Dict[str, Any]]] = [[] for _ in range(n)]
    stage_reports: List[StageReport] = []
    halted = True

    logger.debug("Running %s on n=%d, B=%d, seed=%d", program.name, n, net.bandwidth, seed)
    for index, stage_program in enumerate(_stages_of(program, n)):
        cap = stage_program.round_cap(n)
        global_left = limit - ledger.rounds
        budget = global_left if cap is None else min(global_left, cap)

        stage = _Stage(net, stage_program, index, seed, ledger)
        rounds, finished = stage.execute(budget)
        outputs = stage.outputs()
        for v, out in enumerate(outputs):
            for t in out:
                if not net.graph.is_triangle(t):
                    raise InvariantViolation(f"node {v} output {t}, which is not a triangle of the input graph")
            per_node[v].update(out)
            traces[v].extend({"stage": index, **event} for event in stage.contexts[v].trace)

        out_of_rounds = not finished and ledger.rounds >= limit
        aborted = not finished and not out_of_rounds
        if aborted:
            logger.info("%s stopped at its round cap of %s rounds", stage_program.name, cap)
        stage_reports.append(
            StageReport(
                name=stage_program.name,
                rounds=rounds,
                halted=finished,
                aborted=aborted,
                parameters=stage_program.parameters(n),
                output_size=len(frozenset().union(*outputs)) if outputs else 0,
            )
        )
        if out_of_rounds:
            halted = False
            break

    output = frozenset().union(*per_node) if per_node else frozenset()
    logger.debug("%s finished after %d rounds with %d triangles", program.name, ledger.rounds, len(output))
    return RunReport(
        program=program.name,
        seed=seed,
        n=n,
        bandwidth=net.bandwidth,
        rounds=ledger.rounds,
        per_node_rx_bits=ledger.per_node_rx_bits,
        per_edge_bits=ledger.per_edge_bits,
        max_edge_round_bits=ledger.max_edge_round_bits,
        output=output,
        per_node_outputs=[frozenset(out) for out in per_node],
        halted=halted,
        stages=stage_reports,
        traces=traces,
        parameters=program.parameters(n),
    )
