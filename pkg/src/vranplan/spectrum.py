"""Spectrum holdings, band classes, contiguous runs and component carriers.

All frequencies are in MHz. Adjacency is tested with exact equality: blocks
are expected at integer-MHz (or finer, but exactly representable) resolution
with no guard bands between them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from .errors import ConfigError, InvalidHoldingError, UnclassifiableBandError

LOW_BAND_MAX_MHZ = 1000.0
MID_BAND_MAX_MHZ = 7125.0
FR2_MIN_MHZ = 24000.0
FR2_MAX_MHZ = 47000.0

DEFAULT_CC_CAP_FR1 = 100.0
DEFAULT_CC_CAP_FR2 = 100.0


class FrequencyRange(str, enum.Enum):
    FR1 = "FR1"
    FR2 = "FR2"


class BandClass(str, enum.Enum):
    LOW = "LOW"
    MID = "MID"
    HIGH = "HIGH"

    @property
    def fr(self) -> FrequencyRange:
        return FrequencyRange.FR2 if self is BandClass.HIGH else FrequencyRange.FR1


@dataclass(frozen=True)
class SpectrumBlock:
    carrier_label: str
    band: str
    f_low: float
    f_high: float
    profit: float | None = None

    def __post_init__(self):
        if not self.carrier_label:
            raise InvalidHoldingError("carrier_label must be non-empty")
        if not self.band:
            raise InvalidHoldingError(f"{self.carrier_label}: band tag must be non-empty")
        if not (math.isfinite(self.f_low) and math.isfinite(self.f_high)):
            raise InvalidHoldingError(f"{self.carrier_label}: non-finite frequency")
        if self.f_high <= self.f_low:
            raise InvalidHoldingError(
                f"{self.carrier_label}: f_high ({self.f_high}) must exceed f_low ({self.f_low})"
            )

    @property
    def bandwidth(self) -> float:
        return self.f_high - self.f_low


@dataclass(frozen=True)
class ComponentCarrier:
    id: str
    band: str
    f_low: float
    f_high: float
    members: Tuple[str, ...]
    aggregated: bool
    fr: FrequencyRange = FrequencyRange.FR1

    @property
    def bandwidth(self) -> float:
        return self.f_high - self.f_low

    @property
    def center_mhz(self) -> float:
        return 0.5 * (self.f_low + self.f_high)

    @property
    def period_ns(self) -> float:
        """Carrier period at the centre frequency, T = 1/f."""
        return 1e3 / self.center_mhz


@dataclass(frozen=True)
class CaGroup:
    """Inter-band carrier aggregation: per-band CCs under one label, never merged."""

    label: str
    carriers: Tuple[ComponentCarrier, ...] = field(default_factory=tuple)

    @property
    def bands(self) -> Tuple[str, ...]:
        return tuple(sorted({cc.band for cc in self.carriers}))

    @property
    def total_bandwidth(self) -> float:
        return sum(cc.bandwidth for cc in self.carriers)


def classify_band(block: SpectrumBlock) -> Tuple[BandClass, FrequencyRange]:
    """Return ``(band_class, frequency_range)`` for a block.

    The whole block must sit inside one class; blocks straddling a boundary
    or falling in the 7.125-24 GHz gap are rejected.
    """
    lo, hi = block.f_low, block.f_high
    if lo >= 0 and hi <= LOW_BAND_MAX_MHZ:
        cls = BandClass.LOW
    elif lo >= LOW_BAND_MAX_MHZ and hi <= MID_BAND_MAX_MHZ:
        cls = BandClass.MID
    elif lo >= FR2_MIN_MHZ and hi <= FR2_MAX_MHZ:
        cls = BandClass.HIGH
    else:
        raise UnclassifiableBandError(
            f"{block.carrier_label}: {lo}-{hi} MHz is outside every defined band class"
        )
    return cls, cls.fr


def _check_overlaps(blocks: Sequence[SpectrumBlock]) -> None:
    ordered = sorted(blocks, key=lambda b: (b.f_low, b.f_high))
    for prev, cur in zip(ordered, ordered[1:]):
        if cur.f_low < prev.f_high:
            raise InvalidHoldingError(
                f"blocks {prev.carrier_label} and {cur.carrier_label} overlap "
                f"({prev.f_low}-{prev.f_high} vs {cur.f_low}-{cur.f_high} MHz)"
            )


def contiguity_partition(blocks: Iterable[SpectrumBlock]) -> List[List[SpectrumBlock]]:
    """Group blocks into maximal same-band runs of exactly abutting intervals."""
    blocks = list(blocks)
    labels = [b.carrier_label for b in blocks]
    if len(set(labels)) != len(labels):
        raise InvalidHoldingError("duplicate carrier_label in holding")
    _check_overlaps(blocks)

    runs: List[List[SpectrumBlock]] = []
    for band in sorted({b.band for b in blocks}):
        ordered = sorted((b for b in blocks if b.band == band), key=lambda b: b.f_low)
        run = [ordered[0]]
        for b in ordered[1:]:
            if b.f_low == run[-1].f_high:
                run.append(b)
            else:
                runs.append(run)
                run = [b]
        runs.append(run)
    runs.sort(key=lambda r: (r[0].f_low, r[0].band))
    return runs


def run_bounds(run: Sequence[SpectrumBlock]) -> Tuple[float, float]:
    return run[0].f_low, run[-1].f_high


def _cc_id(run: Sequence[SpectrumBlock], lo: float, hi: float, members: List[str], piece: int, pieces: int) -> str:
    if len(members) == 1:
        src = next(b for b in run if b.carrier_label == members[0])
        if src.f_low == lo and src.f_high == hi:
            return members[0]
    if pieces == 1:
        return "+".join(members)
    if len(run) == 1:
        return f"{run[0].carrier_label}.{piece + 1}"
    return f"{'+'.join(members)}.{piece + 1}"


def channelize(run: Sequence[SpectrumBlock], cc_cap: float) -> List[ComponentCarrier]:
    """Tile a contiguous run into component carriers of width at most ``cc_cap``.

    Splits greedily from the low edge; the remainder (if any) becomes the last
    carrier, so the count is ``ceil(run_bw / cc_cap)``.
    """
    if not cc_cap > 0:
        raise ConfigError(f"cc_cap must be positive, got {cc_cap}")
    if not run:
        return []
    for prev, cur in zip(run, run[1:]):
        if cur.f_low != prev.f_high or cur.band != prev.band:
            raise InvalidHoldingError("channelize expects a single contiguous same-band run")

    fr = classify_band(run[0])[1]
    lo_run, hi_run = run_bounds(run)
    edges = [lo_run]
    k = 1
    while edges[-1] < hi_run:
        edges.append(min(lo_run + k * cc_cap, hi_run))
        k += 1

    pieces = len(edges) - 1
    ccs = []
    for i in range(pieces):
        lo, hi = edges[i], edges[i + 1]
        members = [b.carrier_label for b in run if b.f_low < hi and b.f_high > lo]
        ccs.append(
            ComponentCarrier(
                id=_cc_id(run, lo, hi, members, i, pieces),
                band=run[0].band,
                f_low=lo,
                f_high=hi,
                members=tuple(members),
                aggregated=len(members) >= 2,
                fr=fr,
            )
        )
    return ccs


def plan_carriers(
    blocks: Iterable[SpectrumBlock],
    cc_cap_fr1: float = DEFAULT_CC_CAP_FR1,
    cc_cap_fr2: float = DEFAULT_CC_CAP_FR2,
) -> List[ComponentCarrier]:
    """Partition a holding into runs and channelise each under its FR cap."""
    ccs: List[ComponentCarrier] = []
    for run in contiguity_partition(blocks):
        fr = classify_band(run[0])[1]
        ccs.extend(channelize(run, cc_cap_fr2 if fr is FrequencyRange.FR2 else cc_cap_fr1))
    return ccs


def ca_group(label: str, carriers: Iterable[ComponentCarrier]) -> CaGroup:
    carriers = tuple(carriers)
    ids = [cc.id for cc in carriers]
    if len(set(ids)) != len(ids):
        raise InvalidHoldingError(f"CA group {label!r} lists a carrier twice")
    return CaGroup(label=label, carriers=carriers)
