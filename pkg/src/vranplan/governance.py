"""Delay-cost curve, clock-hierarchy check and requisite-variety ledger."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, List

from .errors import ConfigError, DomainError

TARGET_SPEC_DROPS_PER_YEAR = 4.0
SPEC_DROP_TOLERANCE = 0.5
#: silicon node cadence, midpoint of 9-12 months, in years
DEFAULT_NODE_CYCLE_YEARS = 0.875


class Status(str, enum.Enum):
    PASS = "PASS"
    WARN = "WARN"
    FAIL = "FAIL"


@dataclass(frozen=True)
class DelayCostModel:
    base_cost: float
    tau_c: float

    def __post_init__(self):
        if not self.base_cost > 0:
            raise ConfigError("base_cost must be positive")
        if not self.tau_c > 0:
            raise ConfigError("tau_c must be positive")


def corrective_cost(model: DelayCostModel, tau: float) -> float:
    """``base_cost * exp(tau / tau_c)`` for a discovery delay ``tau`` >= 0."""
    if not tau >= 0:
        raise DomainError(f"discovery delay must be non-negative, got {tau}")
    return model.base_cost * math.exp(tau / model.tau_c)


def delay_cost_curve(model: DelayCostModel, taus: Iterable[float]) -> List[dict]:
    return [{"tau": t, "cost": corrective_cost(model, t)} for t in taus]


@dataclass(frozen=True)
class ClockConfig:
    horizon_tech: float
    horizon_build: float
    node_cycle: float = DEFAULT_NODE_CYCLE_YEARS
    v_tech: float = TARGET_SPEC_DROPS_PER_YEAR
    v_build: float = 12.0
    v_ops: float = 365.0

    def __post_init__(self):
        for name in ("horizon_tech", "horizon_build", "node_cycle", "v_tech", "v_build", "v_ops"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"ClockConfig.{name} must be positive")


@dataclass
class Diagnosis:
    status: Status
    findings: List[str] = field(default_factory=list)
    binding_term: str = ""

    def to_dict(self) -> dict:
        return {"status": self.status.value, "binding_term": self.binding_term, "findings": list(self.findings)}


def check_clock_hierarchy(cfg: ClockConfig) -> Diagnosis:
    """FAIL when the tech horizon is shorter than both the build horizon and two node cycles allow.

    WARN (without FAIL) when the velocities are not strictly ordered
    tech < build < ops, or when the tech cadence is more than 50 % away from
    four spec drops a year.
    """
    findings = []
    status = Status.PASS
    binding = ""
    floor = max(cfg.horizon_build, 2.0 * cfg.node_cycle)
    if cfg.horizon_tech < floor:
        status = Status.FAIL
        binding = "horizon_build" if cfg.horizon_build >= 2.0 * cfg.node_cycle else "node_cycle"
        findings.append(f"tech horizon {cfg.horizon_tech:g} yr < max(build horizon {cfg.horizon_build:g}, "
                        f"2 x node cycle {2.0 * cfg.node_cycle:g}) yr")
    if not cfg.v_tech < cfg.v_build < cfg.v_ops:
        findings.append(f"velocity order tech < build < ops violated ({cfg.v_tech:g}, {cfg.v_build:g}, {cfg.v_ops:g})")
        binding = binding or "velocity_order"
    if abs(cfg.v_tech - TARGET_SPEC_DROPS_PER_YEAR) > SPEC_DROP_TOLERANCE * TARGET_SPEC_DROPS_PER_YEAR:
        findings.append(f"tech cadence {cfg.v_tech:g}/yr is more than 50% off {TARGET_SPEC_DROPS_PER_YEAR:g}/yr")
        binding = binding or "v_tech"
    if status is Status.PASS and findings:
        status = Status.WARN
    return Diagnosis(status, findings, binding)


@dataclass(frozen=True)
class VarietyLedger:
    v_internal: int
    v_external: int

    def __post_init__(self):
        for name in ("v_internal", "v_external"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ConfigError(f"VarietyLedger.{name} must be a non-negative integer")


def check_requisite_variety(ledger: VarietyLedger) -> Status:
    return Status.PASS if ledger.v_internal >= ledger.v_external else Status.FAIL
