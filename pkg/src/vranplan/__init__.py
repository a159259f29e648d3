"""Planning and validation toolkit for virtualised RAN deployments."""

__version__ = "0.1.0"

from ._accel import backend  # noqa: E402
from .addressing import GnbId, PackedGnbId, decode_string, encode_string, pack_32, unpack_32  # noqa: E402
from .latency import FronthaulPath, HarqBudget, check_placement, one_way_delay  # noqa: E402
from .overhead import CipherConfig, CipherMode, DssConfig, DssMode, apply_penalties  # noqa: E402
from .packing import CellDemand, DuProfile, Objective, PackingPlan, SiteTopology, brute_force_pack, pack  # noqa: E402
from .slicing import SliceProblem, UeEntry, dual_ascent, emit_power_caps, grid_oracle  # noqa: E402
from .spectrum import SpectrumBlock, channelize, classify_band, contiguity_partition, plan_carriers  # noqa: E402

__all__ = [
    "backend", "GnbId", "PackedGnbId", "decode_string", "encode_string", "pack_32", "unpack_32",
    "FronthaulPath", "HarqBudget", "check_placement", "one_way_delay", "CipherConfig", "CipherMode",
    "DssConfig", "DssMode", "apply_penalties", "CellDemand", "DuProfile", "Objective", "PackingPlan",
    "SiteTopology", "brute_force_pack", "pack", "SliceProblem", "UeEntry", "dual_ascent",
    "emit_power_caps", "grid_oracle", "SpectrumBlock", "channelize", "classify_band",
    "contiguity_partition", "plan_carriers",
]
