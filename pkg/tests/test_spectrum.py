import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vranplan.errors import ConfigError, InvalidHoldingError, UnclassifiableBandError
from vranplan.spectrum import (BandClass, FrequencyRange, SpectrumBlock, ca_group, channelize,
                               classify_band, contiguity_partition, plan_carriers)


def blk(label, lo, hi, band="n4"):
    return SpectrumBlock(label, band, lo, hi)


@pytest.mark.parametrize("lo,hi,cls,fr", [
    (617, 652, BandClass.LOW, FrequencyRange.FR1),
    (2110, 2155, BandClass.MID, FrequencyRange.FR1),
    (3700, 3800, BandClass.MID, FrequencyRange.FR1),
    (27500, 28350, BandClass.HIGH, FrequencyRange.FR2),
    (37000, 40000, BandClass.HIGH, FrequencyRange.FR2),
])
def test_classify(lo, hi, cls, fr):
    assert classify_band(blk("x", lo, hi)) == (cls, fr)


@pytest.mark.parametrize("lo,hi", [(900, 1100), (7000, 7200), (10000, 10100), (46900, 47100)])
def test_classify_rejects_gaps_and_straddles(lo, hi):
    with pytest.raises(UnclassifiableBandError):
        classify_band(blk("x", lo, hi))


def test_block_validation():
    with pytest.raises((ConfigError, InvalidHoldingError)):
        blk("bad", 2120, 2110)


def test_partition_groups_adjacent_same_band():
    runs = contiguity_partition([blk("c3", 2130, 2135), blk("c1", 2110, 2120), blk("c2", 2120, 2130),
                                 blk("c7", 2675, 2690, "n7")])
    assert [[b.carrier_label for b in r] for r in runs] == [["c1", "c2", "c3"], ["c7"]]


def test_partition_gap_splits_run():
    runs = contiguity_partition([blk("c1", 2110, 2120), blk("c3", 2130, 2135)])
    assert len(runs) == 2


def test_partition_band_boundary_splits_run():
    # abutting in frequency but declared in different bands
    runs = contiguity_partition([blk("a", 2110, 2120, "n4"), blk("b", 2120, 2130, "n66")])
    assert len(runs) == 2


def test_partition_rejects_overlap_and_duplicates():
    with pytest.raises(InvalidHoldingError):
        contiguity_partition([blk("a", 2110, 2125), blk("b", 2120, 2130)])
    with pytest.raises(InvalidHoldingError):
        contiguity_partition([blk("a", 2110, 2120), blk("a", 2130, 2140)])


def test_partition_empty():
    assert contiguity_partition([]) == []


@pytest.mark.parametrize("width,cap,expected", [
    (400, 100, [100] * 4),
    (50, 100, [50]),
    (250, 100, [100, 100, 50]),
])
def test_channelize_widths(width, cap, expected):
    ccs = channelize([blk("m", 28000, 28000 + width, "n257")], cap)
    assert [cc.bandwidth for cc in ccs] == expected
    assert all(cc.fr is FrequencyRange.FR2 for cc in ccs)


def _min_tiling(width, cap):
    # independent oracle: fewest integer-MHz pieces <= cap covering the run
    best = [0] + [math.inf] * width
    for w in range(1, width + 1):
        best[w] = min(best[w - k] + 1 for k in range(1, min(cap, w) + 1))
    return best[width]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 300), st.integers(1, 120))
def test_channelize_count_is_minimal(width, cap):
    ccs = channelize([blk("m", 3700, 3700 + width, "n77")], cap)
    assert len(ccs) == _min_tiling(width, cap) == math.ceil(width / cap)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=8), st.integers(1, 100))
def test_channelize_conserves_bandwidth_and_tiles(widths, cap):
    lo = 3300
    run = []
    for i, w in enumerate(widths):
        run.append(blk(f"b{i}", lo, lo + w, "n77"))
        lo += w
    ccs = channelize(run, cap)
    assert sum(cc.bandwidth for cc in ccs) == sum(widths)
    assert all(0 < cc.bandwidth <= cap for cc in ccs)
    assert ccs[0].f_low == run[0].f_low and ccs[-1].f_high == run[-1].f_high
    assert all(a.f_high == b.f_low for a, b in zip(ccs, ccs[1:]))
    assert len({cc.id for cc in ccs}) == len(ccs)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(1, 20)), min_size=1, max_size=8))
def test_plan_carriers_idempotent(gaps_widths):
    blocks, lo = [], 2000
    for i, (gap, w) in enumerate(gaps_widths):
        lo += gap
        blocks.append(blk(f"b{i}", lo, lo + w, "n66"))
        lo += w
    first = plan_carriers(blocks)
    again = plan_carriers([SpectrumBlock(cc.id, cc.band, cc.f_low, cc.f_high) for cc in first])
    assert [(c.f_low, c.f_high) for c in again] == [(c.f_low, c.f_high) for c in first]


def test_carrier_ids_and_flags():
    ccs = plan_carriers([blk("c1", 2110, 2120), blk("c2", 2120, 2130), blk("c3", 2130, 2135),
                         blk("c7", 2675, 2690, "n7")])
    assert [cc.id for cc in ccs] == ["c1+c2+c3", "c7"]
    assert [cc.aggregated for cc in ccs] == [True, False]
    assert ccs[0].members == ("c1", "c2", "c3")
    split = channelize([blk("w", 28000, 28250, "n257")], 100)
    assert [cc.id for cc in split] == ["w.1", "w.2", "w.3"]


def test_aggregation_saves_cells():
    holding = [blk("c1", 2110, 2120), blk("c2", 2120, 2130), blk("c3", 2130, 2135)]
    assert len(plan_carriers(holding)) == 1 < len(holding)


def test_channelize_rejects_bad_input():
    with pytest.raises(ConfigError):
        channelize([blk("a", 2110, 2120)], 0)
    with pytest.raises(InvalidHoldingError):
        channelize([blk("a", 2110, 2120), blk("b", 2125, 2130)], 100)
    assert channelize([], 100) == []


def test_ca_group():
    ccs = plan_carriers([blk("c1", 2110, 2120), blk("c7", 2675, 2690, "n7")])
    g = ca_group("pcell", ccs)
    assert g.total_bandwidth == 25
    with pytest.raises(InvalidHoldingError):
        ca_group("dup", [ccs[0], ccs[0]])


def test_carrier_period():
    cc = plan_carriers([blk("c", 2000, 2010, "n66")])[0]
    assert cc.center_mhz == 2005
    assert cc.period_ns == pytest.approx(1e3 / 2005)
