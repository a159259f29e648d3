import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from vranplan.addressing import (DECIMAL_SPACE, PACKED_SPACE, PREFIX_LIMIT, SUFFIX_LIMIT, BandHint,
                                 GnbId, PackedGnbId, band_class_from_vdu, decode_string, encode_string,
                                 pack_32, packable, unpack_32)
from vranplan.errors import FieldRangeError, IdParseError, PrefixOverflowError, SuffixOverflowError

ids = st.builds(GnbId, st.integers(0, 999), st.integers(0, 9999), st.integers(0, 9999))


def test_examples():
    assert encode_string(GnbId(1, 2, 7001)) == "00100027001"
    assert decode_string("00100027001") == GnbId(1, 2, 7001)
    assert str(GnbId(999, 9999, 9999)) == "99999999999"


@pytest.mark.parametrize("vdu,hint", [(4001, BandHint.LOW), (7001, BandHint.MID), (9001, BandHint.UWB),
                                      (1, BandHint.UNSPECIFIED), (5000, BandHint.UNSPECIFIED)])
def test_band_hint(vdu, hint):
    assert band_class_from_vdu(vdu) is hint
    assert GnbId(0, 0, vdu).band_hint is hint


@settings(max_examples=500)
@given(ids)
def test_string_round_trip(gid):
    text = encode_string(gid)
    assert len(text) == 11 and text.isdigit()
    assert decode_string(text) == gid


@settings(max_examples=300)
@given(ids, ids)
def test_encoding_preserves_order(a, b):
    assert (a < b) == (encode_string(a) < encode_string(b))


@pytest.mark.parametrize("text", ["", "0010002700", "001000270011", "0010002700a", " 0010002700", "１２３４５６７８９０１"])
def test_decode_rejects_malformed(text):
    with pytest.raises(IdParseError):
        decode_string(text)


@pytest.mark.parametrize("field,args", [("market", (1000, 0, 0)), ("vcu", (0, 10000, 0)),
                                        ("vdu", (0, 0, 10000)), ("market", (-1, 0, 0))])
def test_field_ranges(field, args):
    with pytest.raises(FieldRangeError) as exc:
        GnbId(*args)
    assert exc.value.field == field


@settings(max_examples=500)
@given(ids)
def test_packed_domain_characterisation(gid):
    prefix_ok = gid.market * 10_000 + gid.vcu < PREFIX_LIMIT
    suffix_ok = gid.vdu < SUFFIX_LIMIT
    assert packable(gid) == (prefix_ok and suffix_ok)
    if prefix_ok and suffix_ok:
        packed = pack_32(gid)
        assert 0 <= packed.value < PACKED_SPACE
        assert unpack_32(packed) == gid
    elif not prefix_ok:
        with pytest.raises(PrefixOverflowError):
            pack_32(gid)
    else:
        with pytest.raises(SuffixOverflowError):
            pack_32(gid)


@settings(max_examples=300)
@given(st.integers(0, PACKED_SPACE - 1))
def test_unpack_then_pack(value):
    prefix = value >> 12
    assume(prefix // 10_000 <= 999)
    gid = unpack_32(value)
    assert pack_32(gid).value == value


def test_space_sizes():
    assert DECIMAL_SPACE == 10 ** 11
    assert PACKED_SPACE == 2 ** 32
    assert DECIMAL_SPACE > PACKED_SPACE


def test_overflow_examples():
    with pytest.raises(SuffixOverflowError):
        pack_32(GnbId(1, 2, 7001))
    with pytest.raises(PrefixOverflowError):
        pack_32(GnbId(105, 0, 1))
    packed = pack_32(GnbId(104, 8575, 4095))
    assert packed.prefix == PREFIX_LIMIT - 1 and packed.suffix == SUFFIX_LIMIT - 1
    assert packed.hex == "0xFFFFFFFF"
    assert isinstance(packed, PackedGnbId)


def test_unpack_rejects_out_of_range():
    with pytest.raises(IdParseError):
        unpack_32(PACKED_SPACE)
    with pytest.raises(IdParseError):
        unpack_32(-1)
