"""Throughput penalties for cipher enforcement and dynamic spectrum sharing."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple

from .errors import ConfigError


class CipherMode(str, enum.Enum):
    NONE = "NONE"
    PER_PDU_SOFTWARE = "PER_PDU_SOFTWARE"
    HW_OFFLOAD = "HW_OFFLOAD"
    # interface-level TLS figure, kept apart from the per-PDU user-plane range
    INTERFACE_TLS = "INTERFACE_TLS"


class DssMode(str, enum.Enum):
    OFF = "OFF"
    ON = "ON"


# (low, high, default) penalty fraction per mode
CIPHER_PENALTY: Dict[CipherMode, Tuple[float, float, float]] = {
    CipherMode.NONE: (0.0, 0.0, 0.0),
    CipherMode.PER_PDU_SOFTWARE: (0.07, 0.12, 0.095),
    CipherMode.HW_OFFLOAD: (0.0, 0.03, 0.03),
    CipherMode.INTERFACE_TLS: (0.0, 0.08, 0.08),
}
DSS_PENALTY: Dict[DssMode, Tuple[float, float, float]] = {
    DssMode.OFF: (0.0, 0.0, 0.0),
    DssMode.ON: (0.20, 0.40, 0.25),
}

#: added cipher latency observed on live interfaces, microseconds
CIPHER_LATENCY_US = (35.0, 60.0)


def _resolve(table, mode, penalty, kind):
    lo, hi, default = table[mode]
    value = default if penalty is None else float(penalty)
    if not lo <= value <= hi:
        raise ConfigError(f"{kind} penalty {value} outside [{lo}, {hi}] for mode {mode.value}")
    return value


@dataclass(frozen=True)
class CipherConfig:
    mode: CipherMode = CipherMode.NONE
    penalty: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", CipherMode(self.mode))
        object.__setattr__(self, "penalty", _resolve(CIPHER_PENALTY, self.mode, self.penalty, "cipher"))


@dataclass(frozen=True)
class DssConfig:
    mode: DssMode = DssMode.OFF
    penalty: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", DssMode(self.mode))
        object.__setattr__(self, "penalty", _resolve(DSS_PENALTY, self.mode, self.penalty, "DSS"))


@dataclass(frozen=True)
class ThroughputEstimate:
    nominal_mbps: float
    effective_mbps: float
    applied_penalties: List[Tuple[str, float]] = field(default_factory=list)

    @property
    def retained(self) -> float:
        return self.effective_mbps / self.nominal_mbps if self.nominal_mbps else 1.0

    def to_dict(self) -> dict:
        return {
            "nominal_mbps": self.nominal_mbps,
            "effective_mbps": self.effective_mbps,
            "applied_penalties": [{"source": s, "fraction": p} for s, p in self.applied_penalties],
        }


def compose(nominal_mbps: float, penalties: Iterable[float]) -> float:
    """``nominal * prod(1 - p)``, multiplied in sorted order so any input order gives the same float."""
    out = float(nominal_mbps)
    for p in sorted(penalties):
        out *= 1.0 - p
    return out


def apply_penalties(nominal_mbps: float, cipher: CipherConfig | None = None,
                    dss: DssConfig | None = None) -> ThroughputEstimate:
    if nominal_mbps < 0:
        raise ConfigError("nominal throughput must be non-negative")
    cipher = cipher or CipherConfig()
    dss = dss or DssConfig()
    applied = [(f"cipher:{cipher.mode.value}", cipher.penalty), (f"dss:{dss.mode.value}", dss.penalty)]
    applied = [(s, p) for s, p in applied if p > 0]
    return ThroughputEstimate(float(nominal_mbps), compose(nominal_mbps, [p for _, p in applied]), applied)
