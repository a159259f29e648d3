"""Slice power allocation by dual ascent on the log-utility Lagrangian.

The primal problem is

    maximise   sum_u log R_u(p_u)
    subject to sum_u p_u <= p_max,  p_u >= p_floor

and the solver works on its Lagrangian ``sum log R_u(p_u) - lam (sum p_u - p_max)``.
For a fixed multiplier each UE's term is a 1-D concave maximisation, solved
by bisection on the derivative; the multiplier then takes a projected
subgradient step.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from . import _slicing_kernels as kern
from ._accel import JIT_ENABLED
from .errors import ConfigError, ConvergenceError, InstanceTooLargeError

FLOOR_FRACTION = 1e-9
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 10_000
ORACLE_MAX_UES = 3
#: KPI tick to actuation latency of an edge-hosted control loop, milliseconds
KPI_ACTUATION_LOOP_MS = 7.0


@dataclass(frozen=True)
class UeEntry:
    id: str
    gain: float
    weight: float = 1.0
    intent: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class SliceProblem:
    users: Sequence[UeEntry]
    p_max: float
    id: str = "slice"

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(self.users))
        if not self.users:
            raise ConfigError("slice problem needs at least one UE")
        if not self.p_max > 0:
            raise ConfigError(f"p_max must be positive, got {self.p_max}")
        for ue in self.users:
            if not ue.gain > 0:
                raise ConfigError(f"UE {ue.id!r}: gain must be positive, got {ue.gain}")
            if not ue.weight > 0:
                raise ConfigError(f"UE {ue.id!r}: weight must be positive, got {ue.weight}")
        ids = [ue.id for ue in self.users]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate UE id")

    @property
    def gains(self) -> np.ndarray:
        return np.array([ue.gain for ue in self.users], np.float64)

    @property
    def weights(self) -> np.ndarray:
        return np.array([ue.weight for ue in self.users], np.float64)

    @property
    def p_floor(self) -> float:
        return FLOOR_FRACTION * self.p_max


class RateModel:
    """Per-UE rate as a function of power.

    Subclasses provide ``rate`` and ``dlog_rate`` (the derivative of
    ``log rate``) over numpy arrays. Rates must be positive, increasing and
    concave on ``p > 0`` so that ``dlog_rate`` is strictly decreasing.
    """

    def rate(self, p, gain, weight):
        raise NotImplementedError

    def dlog_rate(self, p, gain, weight):
        raise NotImplementedError

    def log_rate(self, p, gain, weight):
        return np.log(self.rate(p, gain, weight))

    def stationary_power(self, lam, gain, weight, lo, hi):
        return kern.bisect_np(lambda p: self.dlog_rate(p, gain, weight), lam, lo, hi, gain.shape[0])


class ShannonRate(RateModel):
    """``R(p) = w * log2(1 + g p)``."""

    def rate(self, p, gain, weight):
        return weight * np.log2(1.0 + gain * p)

    def dlog_rate(self, p, gain, weight):
        return kern.shannon_dlog_np(p, gain)

    def stationary_power(self, lam, gain, weight, lo, hi):
        return kern.stationary_power(float(lam), gain, float(lo), float(hi))


@dataclass
class SliceAllocation:
    ue_ids: List[str]
    p: np.ndarray
    lam: float
    objective: float
    iterations: int
    kkt_residual: float
    p_floor: float
    residuals: List[float] = field(default_factory=list)
    intents: List[Dict[str, str]] = field(default_factory=list)

    @property
    def unserved(self) -> List[str]:
        return [u for u, x in zip(self.ue_ids, self.p) if x <= self.p_floor * (1 + 1e-9)]

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "objective": self.objective,
            "iterations": self.iterations,
            "kkt_residual": self.kkt_residual,
            "total_power": float(np.sum(self.p)),
            "unserved": self.unserved,
            "power_caps": emit_power_caps(self),
        }


def _objective(model, p, g, w) -> float:
    return float(np.sum(model.log_rate(p, g, w)))


def _kkt(model, p, g, w, lam, floor, p_max) -> float:
    interior = (p > floor * (1 + 1e-9)) & (p < p_max)
    stat = np.abs(model.dlog_rate(p[interior], g[interior], w[interior]) - lam)
    comp = abs(lam * (np.sum(p) - p_max))
    return float(max(stat.max(initial=0.0), comp))


def _auto_step(model, lam, g, w, lo, hi) -> float:
    # inverse slope of total power vs multiplier at the starting point
    h = 1e-6 * lam
    up = np.sum(model.stationary_power(lam + h, g, w, lo, hi))
    dn = np.sum(model.stationary_power(lam - h, g, w, lo, hi))
    slope = abs(up - dn) / (2 * h)
    return 1.0 / slope if slope > 0 else 1.0


def dual_ascent(problem: SliceProblem, model: RateModel | None = None, step: float | None = None,
                tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> SliceAllocation:
    """Maximise total log-rate under the power cap.

    The multiplier starts where the equal split would be stationary for the
    least responsive UE, which keeps the first iterate on the over-budget
    side. With ``step=None`` the step is set to the inverse slope of total
    power with respect to the multiplier there. A trial multiplier whose
    budget residual is not smaller in magnitude than the current one is
    rejected and the step halved, so the step never grows and the accepted
    residuals shrink monotonically. Every inner solve, accepted or not,
    counts against ``max_iter``. Iteration stops once
    ``|sum(p) - p_max| <= tol * p_max``, or when the multiplier sits at zero
    with the budget slack.
    """
    model = model or ShannonRate()
    if step is not None and not step > 0:
        raise ConfigError(f"step must be positive, got {step}")
    if not tol > 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    g, w = problem.gains, problem.weights
    p_max, lo = problem.p_max, problem.p_floor
    n = g.shape[0]

    lam = float(np.min(model.dlog_rate(np.full(n, p_max / n), g, w)))
    if step is None:
        step = _auto_step(model, lam, g, w, lo, p_max)

    def finish(p, lam, k):
        return SliceAllocation(
            ue_ids=[ue.id for ue in problem.users], p=p, lam=lam,
            objective=_objective(model, p, g, w), iterations=k,
            kkt_residual=_kkt(model, p, g, w, lam, lo, p_max), p_floor=lo,
            residuals=residuals, intents=[dict(ue.intent) for ue in problem.users],
        )

    p = model.stationary_power(lam, g, w, lo, p_max)
    r = float(np.sum(p) - p_max)
    residuals: List[float] = [r]
    k = 1
    while True:
        if abs(r) <= tol * p_max or (lam == 0.0 and r <= 0.0):
            return finish(p, lam, k)
        if k >= max_iter:
            break
        trial = max(0.0, lam + step * r)
        p_t = model.stationary_power(trial, g, w, lo, p_max)
        r_t = float(np.sum(p_t) - p_max)
        k += 1
        if abs(r_t) < abs(r) or (trial == 0.0 and r_t <= 0.0):
            lam, p, r = trial, p_t, r_t
            residuals.append(r)
        else:
            step *= 0.5

    last = finish(p, lam, k)
    raise ConvergenceError(f"dual ascent did not converge in {max_iter} iterations "
                           f"(residual {residuals[-1]:.3g})", last)


def grid_oracle(problem: SliceProblem, model: RateModel | None = None, resolution: float = 1e-3) -> SliceAllocation:
    """Exhaustive grid search, for checking :func:`dual_ascent` on up to three UEs.

    Every rate model is increasing in power, so the optimum spends the whole
    budget; the grid therefore walks the face ``sum(p) = p_max`` with the
    first ``n-1`` powers on multiples of ``resolution`` and the last UE taking
    the remainder.
    """
    model = model or ShannonRate()
    if not resolution > 0:
        raise ConfigError(f"resolution must be positive, got {resolution}")
    n = len(problem.users)
    if n > ORACLE_MAX_UES:
        raise InstanceTooLargeError(f"grid oracle handles at most {ORACLE_MAX_UES} UEs, got {n}")
    g, w = problem.gains, problem.weights
    if type(model) is ShannonRate and JIT_ENABLED:
        p, val, evals = kern.grid_search_nb(g, w, problem.p_max, resolution)
    else:
        p, val, evals = kern.grid_search_np(g, w, problem.p_max, resolution,
                                            log_rate=lambda u, x: model.log_rate(x, g[u], w[u]))
    p = np.asarray(p, np.float64)
    dl = model.dlog_rate(p, g, w)
    return SliceAllocation(
        ue_ids=[ue.id for ue in problem.users], p=p, lam=float(np.mean(dl)), objective=float(val),
        iterations=int(evals), kkt_residual=float(np.ptp(dl)), p_floor=problem.p_floor,
        intents=[dict(ue.intent) for ue in problem.users],
    )


def emit_power_caps(alloc: SliceAllocation) -> List[dict]:
    """One P_MAX policy record per UE; intent tags ride along untouched."""
    records = []
    for i, (ue, cap) in enumerate(zip(alloc.ue_ids, alloc.p)):
        rec = {"ue": ue, "p_max": float(cap), "served": bool(cap > alloc.p_floor * (1 + 1e-9))}
        if i < len(alloc.intents) and alloc.intents[i]:
            rec["intent"] = dict(sorted(alloc.intents[i].items()))
        records.append(rec)
    return records
