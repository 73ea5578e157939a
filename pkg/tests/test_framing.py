import pytest
from hypothesis import given
from hypothesis import strategies as st

from congest.framing import PhaseTag, decode_frame, encode_flag, encode_hash, encode_set
from errors import ProtocolError


def test_set_frame_layout():
    bits = encode_set(PhaseTag.S_SET, [1, 2], id_bits=4, length_bits=8)
    assert bits == "00000011" + "00000010" + "0001" + "0010"
    frame, end = decode_frame(bits, 0, 4, 8)
    assert frame.tag is PhaseTag.S_SET
    assert frame.ids == (1, 2)
    assert end == len(bits)


def test_flag_frame():
    frame, end = decode_frame(encode_flag(PhaseTag.U_FLAG, True), 0, 4, 8)
    assert frame.tag is PhaseTag.U_FLAG and frame.flag
    assert end == 9


def test_wrong_tag_kind_is_rejected():
    with pytest.raises(ProtocolError):
        encode_set(PhaseTag.X_FLAG, [1], 4, 8)
    with pytest.raises(ProtocolError):
        encode_flag(PhaseTag.T_SET, True)


def test_unknown_tag():
    with pytest.raises(ProtocolError):
        decode_frame("11111111" + "0", 0, 4, 8)


def test_partial_frames_wait_for_more_bits():
    bits = encode_set(PhaseTag.T_SET, [3, 4, 5], 4, 8)
    assert decode_frame(bits[:-1], 0, 4, 8) is None
    assert decode_frame(bits[:5], 0, 4, 8) is None
    payload = "0011" + "000100" + "000010" + "0" * 12
    assert decode_frame(encode_hash(payload)[:-3], 0, 4, 8) is None


def test_hash_frame_is_self_delimiting():
    # k=3 coefficients of 4 bits each
    payload = "0011" + "000100" + "000010" + "101001100111"
    stream = encode_hash(payload) + encode_flag(PhaseTag.X_FLAG, False)
    frame, end = decode_frame(stream, 0, 4, 8)
    assert frame.payload == payload
    flag, _ = decode_frame(stream, end, 4, 8)
    assert flag.tag is PhaseTag.X_FLAG and not flag.flag


@given(st.lists(st.lists(st.integers(0, 255), max_size=20), min_size=1, max_size=5))
def test_concatenated_sets_decode_in_order(sets):
    stream = "".join(encode_set(PhaseTag.EDGE_SET, ids, 8, 8) for ids in sets)
    position = 0
    decoded = []
    while position < len(stream):
        frame, position = decode_frame(stream, position, 8, 8)
        decoded.append(list(frame.ids))
    assert decoded == sets
