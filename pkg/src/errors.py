"""
Exception hierarchy shared by every package.

The CLI maps these onto its exit-code contract, so each class belongs to exactly one
category: configuration/input errors, hard invariant violations, or plain domain errors.
"""

from typing import Optional, Tuple


class CongestTrianglesError(Exception):
    """Base class for all errors raised by this project"""


class DomainError(CongestTrianglesError, ValueError):
    """An argument lies outside the domain of the operation"""


class GraphFormatError(CongestTrianglesError):
    """Edge-list file could not be parsed"""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
        self.message = message

    def __reduce__(self):
        return type(self), (self.line_number, self.message)


class InfeasibleParametersError(CongestTrianglesError):
    """Generator parameters cannot be satisfied for the requested vertex count"""


class HashDecodeError(CongestTrianglesError):
    """Bit string does not decode to a hash function"""


class ConfigurationError(CongestTrianglesError):
    """Invalid network, algorithm or experiment configuration"""


class ProtocolError(CongestTrianglesError):
    """A frame on a channel does not match what the receiving node expects"""


class InvariantViolation(CongestTrianglesError):
    """A hard invariant (one-sided error, transmission cap) was broken"""


class BandwidthFault(InvariantViolation):
    """More than B bits staged on one directed edge in one round, or staging to a non-neighbor"""

    def __init__(self, round_number: int, edge: Tuple[int, int], bits: int, capacity: Optional[int]):
        sender, receiver = edge
        if capacity is None:
            detail = f"node {sender} staged {bits} bits to non-neighbor {receiver}"
        else:
            detail = f"edge {sender}->{receiver} carries {bits} bits, capacity {capacity}"
        super().__init__(f"round {round_number}: {detail}")
        self.round_number = round_number
        self.edge = edge
        self.bits = bits
        self.capacity = capacity

    def __reduce__(self):
        return type(self), (self.round_number, self.edge, self.bits, self.capacity)
