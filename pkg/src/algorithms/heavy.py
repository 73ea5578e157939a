"""
Programs aimed at eps-heavy triangles, those having an edge shared by at least n^eps triangles.

AlgorithmA1 finds a heavy triangle with constant probability by sampling neighborhoods.
AlgorithmA2 lists each heavy triangle with constant probability: every node a publishes a
3-wise independent hash h_a, and each neighbor j forwards to a the edges {j, l} with h_a(l) = 0.
"""

import math
from typing import Any, Dict

from algorithms.config import validate_eps
from congest.context import SYNC, NodeContext
from congest.engine import NodeGenerator, NodeProgram
from congest.framing import PhaseTag
from data.features import triangles_from_edges
from data.models import make_edge
from hashing.hash_family import decode, encode, sample_hash

HASH_INDEPENDENCE = 3


class AlgorithmA1(NodeProgram):
    name = "a1"

    def __init__(self, eps: float):
        self.eps = validate_eps(eps)

    def sample_probability(self, n: int) -> float:
        return n**-self.eps

    def size_cap(self, n: int) -> float:
        return 4.0 * n ** (1.0 - self.eps)

    def node(self, ctx: NodeContext) -> NodeGenerator:
        p = self.sample_probability(ctx.n)
        draws = ctx.rng.random(len(ctx.neighbors))
        sample = [l for l, draw in zip(ctx.neighbors, draws) if draw < p]
        sent = len(sample) <= self.size_cap(ctx.n)
        if sent:
            for k in ctx.neighbors:
                ctx.send_set(k, sample, PhaseTag.S_SET)
        ctx.record("a1_sample", size=len(sample), sent=sent)
        yield SYNC

        for j in ctx.neighbors:
            sample_j = ctx.read_set(j, PhaseTag.S_SET)
            if sample_j is None:
                continue
            for l in sample_j:
                if l != ctx.id and l in ctx.neighbor_set:
                    ctx.emit(j, ctx.id, l)

    def parameters(self, n: int) -> Dict[str, Any]:
        return {"eps": self.eps, "sample_probability": self.sample_probability(n), "size_cap": self.size_cap(n)}


class AlgorithmA2(NodeProgram):
    name = "a2"

    def __init__(self, eps: float):
        self.eps = validate_eps(eps)

    def range_size(self, n: int) -> int:
        return max(1, math.floor(n ** (self.eps / 2.0)))

    def edge_cap(self, n: int) -> float:
        return 8.0 + 4.0 * n / self.range_size(n)

    def node(self, ctx: NodeContext) -> NodeGenerator:
        range_size = self.range_size(ctx.n)
        cap = self.edge_cap(ctx.n)

        h = sample_hash(HASH_INDEPENDENCE, ctx.n, range_size, ctx.rng)
        encoding = encode(h)
        for a in ctx.neighbors:
            ctx.send_hash(a, encoding)
        yield SYNC

        withheld = 0
        for a in ctx.neighbors:
            frame = ctx.read_frame(a, (PhaseTag.HASH,))
            if frame is None:
                continue
            h_a = decode(frame.payload, ctx.n, range_size)
            selected = [l for l, value in zip(ctx.neighbors, h_a.eval_many(ctx.neighbors)) if value == 0]
            if len(selected) <= cap:
                ctx.send_set(a, selected, PhaseTag.EDGE_SET, limit=cap)
            else:
                withheld += 1
        ctx.record("a2_edges", withheld=withheld)
        yield SYNC

        received = []
        for j in ctx.neighbors:
            ids = ctx.read_set(j, PhaseTag.EDGE_SET)
            if ids is not None:
                received.extend(make_edge(j, l) for l in ids)
        for triangle in triangles_from_edges(received):
            ctx.emit(*triangle)

    def parameters(self, n: int) -> Dict[str, Any]:
        return {"eps": self.eps, "range_size": self.range_size(n), "edge_cap": self.edge_cap(n)}


def algo_a1(eps: float) -> AlgorithmA1:
    return AlgorithmA1(eps)


def algo_a2(eps: float) -> AlgorithmA2:
    return AlgorithmA2(eps)
