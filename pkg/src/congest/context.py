"""
The node-side API of the simulator.

A node program is a generator that receives its NodeContext. It stages messages, then
`yield`s to end the round, or `yield SYNC` to wait at a phase barrier. Returning halts the
node. A context only ever exposes the node's own id, its incident edges, n, its private
random stream and what arrived on its own channels.
"""

import math
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from bitstring import Bits
from congest.framing import Frame, PhaseTag, decode_frame, encode_flag, encode_hash, encode_set
from congest.network import Network
from data.models import Triangle
from errors import BandwidthFault, InvariantViolation, ProtocolError


class Barrier:
    """Yielded by a node to wait until every running node has arrived and all channels are idle"""

    def __repr__(self) -> str:
        return "SYNC"


SYNC = Barrier()


class _Outgoing:
    __slots__ = ("buffer", "position")

    def __init__(self):
        self.buffer = ""
        self.position = 0

    @property
    def pending(self) -> int:
        return len(self.buffer) - self.position

    def push(self, bits: Bits):
        self.buffer = self.buffer[self.position :] + bits
        self.position = 0

    def pop(self, width: int) -> Bits:
        chunk = self.buffer[self.position : self.position + width]
        self.position += len(chunk)
        return chunk


class NodeContext:
    """One node's view: its id, incident edges, n, the bandwidth and its own random stream"""

    def __init__(self, node_id: int, network: Network, rng: np.random.Generator):
        self.id = node_id
        self.n = network.n
        self.neighbors: Tuple[int, ...] = network.graph.neighbors(node_id)
        self.neighbor_set: FrozenSet[int] = network.graph.neighbor_sets[node_id]
        self.id_bits = network.id_bits
        self.length_bits = network.length_bits
        self.bandwidth = network.bandwidth
        self.rng = rng
        self.output: set = set()
        self.trace: List[Dict[str, Any]] = []
        self.round = 0

        self._staged: Dict[int, Bits] = {}
        self._outgoing: Dict[int, _Outgoing] = {}
        self._inbox: Dict[int, Bits] = {}
        self._received: Dict[int, Bits] = {}
        self._read_position: Dict[int, int] = {}

    # ---- sending

    def stage_send(self, neighbor: int, payload: Bits):
        """Stage raw bits for delivery to `neighbor` at the start of the next round"""
        if neighbor not in self.neighbor_set:
            raise BandwidthFault(self.round, (self.id, neighbor), len(payload), None)
        if not payload:
            return
        staged = self._staged.get(neighbor, "") + payload
        if len(staged) > self.bandwidth:
            raise BandwidthFault(self.round, (self.id, neighbor), len(staged), self.bandwidth)
        self._staged[neighbor] = staged

    def _enqueue(self, neighbor: int, frame: Bits) -> int:
        if neighbor not in self.neighbor_set:
            raise BandwidthFault(self.round, (self.id, neighbor), len(frame), None)
        self._outgoing.setdefault(neighbor, _Outgoing()).push(frame)
        return math.ceil(len(frame) / self.bandwidth)

    def send_set(self, neighbor: int, ids: Sequence[int], tag: PhaseTag, limit: Optional[float] = None) -> int:
        """Queue a length-prefixed id set on the channel; returns the rounds the transfer occupies"""
        if limit is not None and len(ids) > limit:
            raise InvariantViolation(f"node {self.id} tried to send {len(ids)} ids to {neighbor}, cap is {limit}")
        if any(not 0 <= i < self.n for i in ids):
            raise ProtocolError(f"node {self.id} tried to send an id outside 0..{self.n - 1}")
        return self._enqueue(neighbor, encode_set(tag, ids, self.id_bits, self.length_bits))

    def send_flag(self, neighbor: int, tag: PhaseTag, flag: bool) -> int:
        return self._enqueue(neighbor, encode_flag(tag, flag))

    def send_hash(self, neighbor: int, encoding: Bits) -> int:
        return self._enqueue(neighbor, encode_hash(encoding))

    def broadcast_flag(self, tag: PhaseTag, flag: bool, targets: Optional[Iterable[int]] = None):
        for neighbor in self.neighbors if targets is None else targets:
            self.send_flag(neighbor, tag, flag)

    # ---- receiving

    @property
    def inbox(self) -> Mapping[int, Bits]:
        """Raw payloads staged by neighbors and delivered since this node last ran"""
        return dict(self._inbox)

    def read_frame(self, neighbor: int, expect: Optional[Iterable[PhaseTag]] = None) -> Optional[Frame]:
        bits = self._received.get(neighbor, "")
        start = self._read_position.get(neighbor, 0)
        if start >= len(bits):
            return None
        parsed = decode_frame(bits, start, self.id_bits, self.length_bits)
        if parsed is None:
            return None
        frame, end = parsed
        expected = None if expect is None else frozenset(expect)
        if expected is not None and frame.tag not in expected:
            raise ProtocolError(f"node {self.id} expected {sorted(expected)} from {neighbor}, got {frame.tag!r}")
        self._read_position[neighbor] = end
        if end == len(bits):
            self._received[neighbor] = ""
            self._read_position[neighbor] = 0
        return frame

    def read_set(self, neighbor: int, tag: PhaseTag) -> Optional[Tuple[int, ...]]:
        frame = self.read_frame(neighbor, (tag,))
        return None if frame is None else frame.ids

    def read_flag(self, neighbor: int, tag: PhaseTag) -> Optional[bool]:
        frame = self.read_frame(neighbor, (tag,))
        return None if frame is None else frame.flag

    # ---- local output and instrumentation

    def emit(self, j: int, k: int, l: int):
        self.output.add(Triangle.of(j, k, l))

    def record(self, event: str, **fields: Any):
        self.trace.append({"event": event, "round": self.round, **fields})

    # ---- engine side

    def _pending_channels(self) -> List[int]:
        channels = set(self._staged)
        channels.update(v for v, stream in self._outgoing.items() if stream.pending)
        return sorted(channels)

    def _transmit(self, neighbor: int, capacity: int) -> Tuple[Bits, Bits]:
        """Bits leaving on one channel this round: the raw payload first, then the framed stream"""
        raw = self._staged.pop(neighbor, "")
        stream = self._outgoing.get(neighbor)
        framed = stream.pop(capacity - len(raw)) if stream is not None else ""
        return raw, framed

    def _stream_backlog(self) -> Dict[int, int]:
        return {v: stream.pending for v, stream in self._outgoing.items() if stream.pending}

    def _deliver(self, sender: int, raw: Bits, framed: Bits):
        if raw:
            self._inbox[sender] = self._inbox.get(sender, "") + raw
        if framed:
            self._received[sender] = self._received.get(sender, "") + framed

    def _clear_inbox(self):
        self._inbox = {}
