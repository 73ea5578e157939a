"""Bit strings as '0'/'1' text, big-endian fixed-width integer fields."""

from typing import Iterable

Bits = str


def to_bits(value: int, width: int) -> Bits:
    if width < 0 or value < 0 or value >> width:
        raise ValueError(f"value {value} does not fit in {width} bits")
    return format(value, f"0{width}b") if width else ""


def join_fields(values: Iterable[int], width: int) -> Bits:
    return "".join(to_bits(v, width) for v in values)


def ceil_log2(value: int) -> int:
    """Smallest w with 2**w >= value, for value >= 1"""
    if value < 1:
        raise ValueError(f"ceil_log2 needs a positive argument, got {value}")
    return (value - 1).bit_length()


class BitReader:
    """Sequential reader over a bit string"""

    def __init__(self, bits: Bits):
        self.bits = bits
        self.position = 0

    @property
    def remaining(self) -> int:
        return len(self.bits) - self.position

    def read(self, width: int) -> int:
        if width > self.remaining:
            raise EOFError(f"need {width} bits, {self.remaining} left")
        chunk = self.bits[self.position : self.position + width]
        self.position += width
        return int(chunk, 2) if chunk else 0
