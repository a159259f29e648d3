"""Market / vCU / vDU logical identifiers.

Two codecs are provided. The decimal codec renders ``MMMCCCCDDDD`` as an
11-digit zero-padded string. The packed codec places ``market*10**4 + vcu``
in the top 20 bits of a 32-bit value and ``vdu`` in the low 12 bits. The
decimal ranges are wider than those bit fields, so the packed codec refuses
(rather than truncates) identifiers it cannot hold.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import FieldRangeError, IdParseError, PrefixOverflowError, SuffixOverflowError

MARKET_MAX = 999
VCU_MAX = 9999
VDU_MAX = 9999

PREFIX_BITS = 20
SUFFIX_BITS = 12
PREFIX_LIMIT = 1 << PREFIX_BITS
SUFFIX_LIMIT = 1 << SUFFIX_BITS

#: number of valid decimal identifiers, 10**3 * 10**4 * 10**4
DECIMAL_SPACE = (MARKET_MAX + 1) * (VCU_MAX + 1) * (VDU_MAX + 1)
#: size of the packed space, exactly 2**32
PACKED_SPACE = PREFIX_LIMIT * SUFFIX_LIMIT

_ID_RE = re.compile(r"[0-9]{11}")


class BandHint(str, enum.Enum):
    LOW = "LOW"
    MID = "MID"
    UWB = "UWB"
    UNSPECIFIED = "UNSPECIFIED"


_HINT_DIGIT = {"4": BandHint.LOW, "7": BandHint.MID, "9": BandHint.UWB}
HINT_PREFIX = {BandHint.LOW: 4, BandHint.MID: 7, BandHint.UWB: 9}


def _check(name, value, hi):
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= hi:
        raise FieldRangeError(name, value, 0, hi)


@dataclass(frozen=True, order=True)
class GnbId:
    market: int
    vcu: int
    vdu: int

    def __post_init__(self):
        _check("market", self.market, MARKET_MAX)
        _check("vcu", self.vcu, VCU_MAX)
        _check("vdu", self.vdu, VDU_MAX)

    @property
    def band_hint(self) -> BandHint:
        return band_class_from_vdu(self.vdu)

    def __str__(self):
        return encode_string(self)


@dataclass(frozen=True)
class PackedGnbId:
    value: int
    prefix_bits: int = PREFIX_BITS
    suffix_bits: int = SUFFIX_BITS

    @property
    def prefix(self) -> int:
        return self.value >> self.suffix_bits

    @property
    def suffix(self) -> int:
        return self.value & ((1 << self.suffix_bits) - 1)

    @property
    def hex(self) -> str:
        return f"0x{self.value:08X}"


def encode_string(gid: GnbId) -> str:
    return f"{gid.market:03d}{gid.vcu:04d}{gid.vdu:04d}"


def decode_string(text: str) -> GnbId:
    if not isinstance(text, str) or not _ID_RE.fullmatch(text):
        raise IdParseError(f"expected exactly 11 decimal digits, got {text!r}")
    return GnbId(int(text[:3]), int(text[3:7]), int(text[7:]))


def packable(gid: GnbId) -> bool:
    return gid.market * 10_000 + gid.vcu < PREFIX_LIMIT and gid.vdu < SUFFIX_LIMIT


def pack_32(gid: GnbId) -> PackedGnbId:
    prefix = gid.market * 10_000 + gid.vcu
    if prefix >= PREFIX_LIMIT:
        raise PrefixOverflowError(
            f"market-vCU prefix {prefix} does not fit in {PREFIX_BITS} bits (limit {PREFIX_LIMIT})"
        )
    if gid.vdu >= SUFFIX_LIMIT:
        raise SuffixOverflowError(
            f"vDU {gid.vdu} does not fit in {SUFFIX_BITS} bits (limit {SUFFIX_LIMIT})"
        )
    return PackedGnbId((prefix << SUFFIX_BITS) | gid.vdu)


def unpack_32(packed: PackedGnbId | int) -> GnbId:
    value = packed.value if isinstance(packed, PackedGnbId) else packed
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < PACKED_SPACE:
        raise IdParseError(f"packed gNB-ID must be a 32-bit unsigned integer, got {value!r}")
    prefix, vdu = value >> SUFFIX_BITS, value & (SUFFIX_LIMIT - 1)
    market, vcu = divmod(prefix, 10_000)
    return GnbId(market, vcu, vdu)


def band_class_from_vdu(vdu: int) -> BandHint:
    _check("vdu", vdu, VDU_MAX)
    return _HINT_DIGIT.get(f"{vdu:04d}"[0], BandHint.UNSPECIFIED)
