"""
Listing triangles whose three edges have no common neighbor in a sampled set X.

Every node learns which neighbors are in X and then N(k) ∩ X for each neighbor k, after
which a node k can decide locally whether a pair {j, l} of its neighbors lies in Delta(X).
The while loop keeps a shrinking set U of unfinished nodes. In each pass:

    - k in U sends S(j, k) = {l in N(k) ∩ U : {j, l} in Delta(X)} to every j in N(k) ∩ U,
      or a one-bit overflow flag once |S(j, k)| exceeds m_bar; j lists S(j, k) ∩ N(j)
    - j is good when at most m_bar neighbors overflowed (the set T(j))
    - good j sends T(j) to its neighbors l in U, and l lists T(j) ∩ N(l)
    - good nodes leave U, announce it and halt

Sampling X with probability 1/(9 n^eps) per node and running the loop under a round cap is
AlgorithmA3.
"""

import math
from typing import Any, Collection, Dict, Iterable, Optional, Sequence

from algorithms.config import DEFAULT_C_STOP, a3_round_cap, auto_m_bar, log2n, validate_eps, x_probability
from congest.context import SYNC, NodeContext
from congest.engine import NodeGenerator, NodeProgram
from congest.framing import PhaseTag
from congest.network import TAG_BITS, Network
from errors import ConfigurationError


def _mask(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def delta_listing(ctx: NodeContext, in_x: bool, m_bar: float) -> NodeGenerator:
    """Node side of the listing loop for a node whose X-membership is `in_x`"""
    ctx.record("x_flag", in_x=in_x)
    ctx.broadcast_flag(PhaseTag.X_FLAG, in_x)
    yield SYNC

    x_neighbors = [k for k in ctx.neighbors if ctx.read_flag(k, PhaseTag.X_FLAG)]
    for k in ctx.neighbors:
        ctx.send_set(k, x_neighbors, PhaseTag.X_NEIGHBORHOOD)
    yield SYNC

    # N(k) ∩ X for every neighbor k, as bitmasks over vertex ids
    x_masks = {k: _mask(ctx.read_set(k, PhaseTag.X_NEIGHBORHOOD) or ()) for k in ctx.neighbors}
    in_u = {k: True for k in ctx.neighbors}
    iteration = 0

    while True:
        iteration += 1
        active = [k for k in ctx.neighbors if in_u[k]]

        for j in active:
            selected = [l for l in active if l != j and not x_masks[j] & x_masks[l]]
            if len(selected) <= m_bar:
                ctx.send_set(j, selected, PhaseTag.S_SET, limit=m_bar)
            else:
                ctx.send_flag(j, PhaseTag.OVERFLOW, True)
        yield SYNC

        overflowed = []
        for k in active:
            frame = ctx.read_frame(k, (PhaseTag.S_SET, PhaseTag.OVERFLOW))
            if frame is None:
                continue
            if frame.tag is PhaseTag.OVERFLOW:
                overflowed.append(k)
                continue
            for l in frame.ids:
                if l in ctx.neighbor_set:
                    ctx.emit(ctx.id, k, l)

        good = len(overflowed) <= m_bar
        ctx.record("iteration", iteration=iteration, good=good, t_size=len(overflowed), active_neighbors=len(active))
        if good:
            for l in active:
                ctx.send_set(l, overflowed, PhaseTag.T_SET, limit=m_bar)
        yield SYNC

        for j in active:
            t_j = ctx.read_set(j, PhaseTag.T_SET)
            for k in t_j or ():
                if k in ctx.neighbor_set:
                    ctx.emit(j, ctx.id, k)

        ctx.broadcast_flag(PhaseTag.U_FLAG, not good, targets=active)
        if good:
            return
        yield SYNC
        for k in active:
            in_u[k] = bool(ctx.read_flag(k, PhaseTag.U_FLAG))


class SubAlgorithm(NodeProgram):
    """Lists every triangle with three edges in Delta(X), for a fixed X and threshold m_bar"""

    name = "sub_a"

    def __init__(self, x_members: Collection[int], m_bar: float):
        if m_bar <= 0:
            raise ConfigurationError(f"m_bar must be positive, got {m_bar}")
        self.x_members = frozenset(x_members)
        self.m_bar = float(m_bar)

    def node(self, ctx: NodeContext) -> NodeGenerator:
        return delta_listing(ctx, ctx.id in self.x_members, self.m_bar)

    def parameters(self, n: int) -> Dict[str, Any]:
        return {"m_bar": self.m_bar, "x_size": len(self.x_members)}


class AlgorithmA3(NodeProgram):
    name = "a3"

    def __init__(self, eps: float, c_stop: float = DEFAULT_C_STOP, m_bar: Optional[float] = None):
        self.eps = validate_eps(eps)
        if c_stop <= 0:
            raise ConfigurationError(f"c_stop must be positive, got {c_stop}")
        if m_bar is not None and m_bar <= 0:
            raise ConfigurationError(f"m_bar must be positive, got {m_bar}")
        self.c_stop = c_stop
        self._m_bar = m_bar

    def m_bar(self, n: int) -> float:
        return self._m_bar if self._m_bar is not None else auto_m_bar(n, self.eps)

    def node(self, ctx: NodeContext) -> NodeGenerator:
        in_x = bool(ctx.rng.random() < x_probability(ctx.n, self.eps))
        yield from delta_listing(ctx, in_x, self.m_bar(ctx.n))

    def round_cap(self, n: int) -> Optional[int]:
        return a3_round_cap(n, self.eps, self.c_stop)

    def parameters(self, n: int) -> Dict[str, Any]:
        return {
            "eps": self.eps,
            "m_bar": self.m_bar(n),
            "x_probability": x_probability(n, self.eps),
            "c_stop": self.c_stop,
            "round_cap": self.round_cap(n),
        }


def algo_sub_a(x_flags: Sequence[bool], m_bar: float) -> SubAlgorithm:
    """x_flags[i] says whether node i belongs to X"""
    return SubAlgorithm([i for i, flag in enumerate(x_flags) if flag], m_bar)


def algo_a3(eps: float, c_stop: float = DEFAULT_C_STOP, m_bar: Optional[float] = None) -> AlgorithmA3:
    return AlgorithmA3(eps, c_stop=c_stop, m_bar=m_bar)


def iteration_bound(n: int) -> int:
    """Passes of the while loop when at most half of U is not good in every pass"""
    return math.floor(log2n(n)) + 1


def sub_a_round_bound(x_size: int, m_bar: float, net: Network) -> int:
    """
    Rounds the listing loop needs on `net` when U halves in every pass: one flag, one set of
    at most |X| ids, then per pass two sets of at most m_bar ids and one flag.
    """
    flag = net.rounds_for_bits(TAG_BITS + 1)
    largest_set = min(math.floor(m_bar), max(0, net.n - 1))
    per_pass = 2 * max(net.set_transfer_rounds(largest_set), flag) + flag
    return flag + net.set_transfer_rounds(min(x_size, max(0, net.n - 1))) + iteration_bound(net.n) * per_pass
