"""
Self-describing frames exchanged on a channel.

    set frame   tag(8) | count(L) | count ids of id_bits each
    flag frame  tag(8) | 1 bit
    hash frame  tag(8) | hash encoding (self-delimiting through its own header)

L = max(8, id_bits). Frames are concatenated on a channel and may span many rounds.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence, Tuple

from bitstring import BitReader, Bits, join_fields, to_bits
from congest.network import TAG_BITS
from errors import ProtocolError
from hashing.hash_family import HEADER_BITS as HASH_HEADER_BITS


class PhaseTag(IntEnum):
    X_FLAG = 0
    HASH = 1
    EDGE_SET = 2
    S_SET = 3
    OVERFLOW = 4
    T_SET = 5
    U_FLAG = 6
    X_NEIGHBORHOOD = 7


SET_TAGS = frozenset({PhaseTag.EDGE_SET, PhaseTag.S_SET, PhaseTag.T_SET, PhaseTag.X_NEIGHBORHOOD})
FLAG_TAGS = frozenset({PhaseTag.X_FLAG, PhaseTag.OVERFLOW, PhaseTag.U_FLAG})


@dataclass(frozen=True)
class Frame:
    tag: PhaseTag
    ids: Tuple[int, ...] = ()
    flag: bool = False
    payload: Bits = ""


def encode_set(tag: PhaseTag, ids: Sequence[int], id_bits: int, length_bits: int) -> Bits:
    if tag not in SET_TAGS:
        raise ProtocolError(f"tag {tag!r} does not carry a set")
    return to_bits(int(tag), TAG_BITS) + to_bits(len(ids), length_bits) + join_fields(ids, id_bits)


def encode_flag(tag: PhaseTag, flag: bool) -> Bits:
    if tag not in FLAG_TAGS:
        raise ProtocolError(f"tag {tag!r} does not carry a flag")
    return to_bits(int(tag), TAG_BITS) + ("1" if flag else "0")


def encode_hash(encoding: Bits) -> Bits:
    return to_bits(int(PhaseTag.HASH), TAG_BITS) + encoding


def _hash_length(reader: BitReader) -> int:
    start = reader.position
    k = reader.read(4)
    width = reader.read(6)
    reader.position = start
    return HASH_HEADER_BITS + k * width


def decode_frame(bits: Bits, position: int, id_bits: int, length_bits: int) -> Optional[Tuple[Frame, int]]:
    """
    Parse one frame starting at `position`. Returns (frame, next_position), or None when the
    buffer holds only part of a frame.
    """
    reader = BitReader(bits)
    reader.position = position
    try:
        raw_tag = reader.read(TAG_BITS)
        try:
            tag = PhaseTag(raw_tag)
        except ValueError:
            raise ProtocolError(f"unknown phase tag {raw_tag}") from None

        if tag in SET_TAGS:
            count = reader.read(length_bits)
            ids = tuple(reader.read(id_bits) for _ in range(count))
            return Frame(tag=tag, ids=ids), reader.position
        if tag in FLAG_TAGS:
            return Frame(tag=tag, flag=reader.read(1) == 1), reader.position

        length = _hash_length(reader)
        if length > reader.remaining:
            return None
        payload = bits[reader.position : reader.position + length]
        return Frame(tag=tag, payload=payload), reader.position + length
    except EOFError:
        return None
