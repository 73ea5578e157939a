import math
from dataclasses import dataclass
from typing import List, Tuple

from bitstring import ceil_log2
from data.models import Graph
from errors import ConfigurationError

TAG_BITS = 8
MIN_LENGTH_BITS = 8
DEFAULT_BETA = 2


@dataclass(frozen=True)
class Network:
    """
    CONGEST network over the input graph.

    Every directed edge carries at most `bandwidth` = beta * id_bits bits per round. The
    phase tag and length prefix of a framed transfer are paid once per transfer.
    """

    graph: Graph
    beta: int
    id_bits: int
    bandwidth: int

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def length_bits(self) -> int:
        """Width of the element count in a framed set; sets never exceed n-1 elements"""
        return max(MIN_LENGTH_BITS, self.id_bits)

    def directed_channels(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.graph.neighbors(u)]

    def rounds_for_bits(self, bits: int) -> int:
        return math.ceil(bits / self.bandwidth) if bits > 0 else 0

    def set_frame_bits(self, count: int) -> int:
        return self.length_bits + count * self.id_bits + TAG_BITS

    def set_transfer_rounds(self, count: int) -> int:
        return self.rounds_for_bits(self.set_frame_bits(count))


def id_bits_for(n: int) -> int:
    return max(1, ceil_log2(max(1, n)))


def build_network(g: Graph, beta: int = DEFAULT_BETA) -> Network:
    if int(beta) != beta or beta < 2:
        raise ConfigurationError(f"bandwidth multiplier beta must be an integer >= 2, got {beta}")
    id_bits = id_bits_for(g.n)
    return Network(graph=g, beta=int(beta), id_bits=id_bits, bandwidth=int(beta) * id_bits)
