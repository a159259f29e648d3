"""Carrier-to-vDU assignment under cell-count and absolute-bandwidth ceilings.

The FR1 bandwidth ceiling is exclusive (a DU carries strictly less than
``max_abw_fr1``); the FR2 ceiling and the cell count are inclusive.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from . import _packing_kernels as kern
from .errors import ConfigError, InfeasiblePackingError, InstanceTooLargeError, OversizedDemandError
from .spectrum import ComponentCarrier, FrequencyRange

EXACT_LIMIT = 12
ORACLE_MAX_DEMANDS = 12
ORACLE_MAX_DUS = 4
MAX_VDUS_PER_SITE = 4
MAX_SITES_PER_VCU = 10_000


class Objective(str, enum.Enum):
    MIN_DUS = "MIN_DUS"
    MAX_PROFIT = "MAX_PROFIT"


@dataclass(frozen=True)
class DuProfile:
    max_cells: int = 18
    max_abw_fr1: float = 160.0
    max_abw_fr2: float = 400.0
    cost: float = 1.0

    def __post_init__(self):
        for name in ("max_cells", "max_abw_fr1", "max_abw_fr2"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"DuProfile.{name} must be positive")
        if self.cost < 0:
            raise ConfigError("DuProfile.cost must be non-negative")


@dataclass(frozen=True)
class CellDemand:
    cc_id: str
    bandwidth: float
    fr: FrequencyRange = FrequencyRange.FR1
    profit: float = 0.0
    cells_required: int = 1

    def __post_init__(self):
        object.__setattr__(self, "fr", FrequencyRange(self.fr))
        if not self.bandwidth > 0:
            raise ConfigError(f"demand {self.cc_id!r}: bandwidth must be positive")
        if self.profit < 0:
            raise ConfigError(f"demand {self.cc_id!r}: profit must be non-negative")
        if self.cells_required < 1:
            raise ConfigError(f"demand {self.cc_id!r}: cells_required must be >= 1")

    @classmethod
    def from_carrier(cls, cc: ComponentCarrier, profit: float | None = None) -> "CellDemand":
        return cls(cc.id, cc.bandwidth, cc.fr, cc.bandwidth if profit is None else profit)


@dataclass
class PackingPlan:
    assignments: Dict[str, int]
    dus_used: int
    disabled: List[str]
    objective_value: float
    objective: Objective = Objective.MIN_DUS
    exact: bool = True

    @property
    def method(self) -> str:
        return "exact" if self.exact else "heuristic"

    def du_members(self) -> List[List[str]]:
        out: List[List[str]] = [[] for _ in range(self.dus_used)]
        for cc, du in sorted(self.assignments.items()):
            out[du].append(cc)
        return out

    def to_dict(self) -> dict:
        return {
            "objective": self.objective.value,
            "method": self.method,
            "dus_used": self.dus_used,
            "objective_value": self.objective_value,
            "assignments": dict(sorted(self.assignments.items())),
            "disabled": list(self.disabled),
        }


@dataclass(frozen=True)
class SiteTopology:
    vdus_per_site: int = MAX_VDUS_PER_SITE
    sites_per_vcu: int = 1


@dataclass(frozen=True)
class Violation:
    constraint: str
    limit: float
    actual: float
    subject: str = ""

    def __str__(self):
        where = f"{self.subject}: " if self.subject else ""
        return f"{where}{self.constraint} {self.actual} exceeds {self.limit}"


@dataclass
class _Arrays:
    demands: List[CellDemand]
    cells: np.ndarray
    fr1: np.ndarray
    fr2: np.ndarray
    profit: np.ndarray


def _check_oversized(demands: Sequence[CellDemand], profile: DuProfile) -> None:
    for d in demands:
        if d.cells_required > profile.max_cells:
            raise OversizedDemandError(d.cc_id, "max_cells")
        if d.fr is FrequencyRange.FR1 and d.bandwidth >= profile.max_abw_fr1:
            raise OversizedDemandError(d.cc_id, "max_abw_fr1")
        if d.fr is FrequencyRange.FR2 and d.bandwidth > profile.max_abw_fr2:
            raise OversizedDemandError(d.cc_id, "max_abw_fr2")


def _arrays(demands: Sequence[CellDemand]) -> _Arrays:
    ids = [d.cc_id for d in demands]
    if len(set(ids)) != len(ids):
        raise ConfigError("duplicate cc_id among demands")
    # index order == cc_id order, which the lexicographic tie-break relies on
    ordered = sorted(demands, key=lambda d: d.cc_id)
    is2 = np.array([d.fr is FrequencyRange.FR2 for d in ordered], bool)
    bw = np.array([d.bandwidth for d in ordered], np.float64)
    return _Arrays(
        demands=ordered,
        cells=np.array([d.cells_required for d in ordered], np.float64),
        fr1=np.where(is2, 0.0, bw),
        fr2=np.where(is2, bw, 0.0),
        profit=np.array([d.profit for d in ordered], np.float64),
    )


def _binding_constraint(demands: Sequence[CellDemand], profile: DuProfile, du_budget: int) -> str:
    cells = sum(d.cells_required for d in demands)
    fr1 = sum(d.bandwidth for d in demands if d.fr is FrequencyRange.FR1)
    fr2 = sum(d.bandwidth for d in demands if d.fr is FrequencyRange.FR2)
    bounds = {
        "max_cells": math.ceil(cells / profile.max_cells),
        "max_abw_fr1": math.floor(fr1 / profile.max_abw_fr1) + 1 if fr1 > 0 else 0,
        "max_abw_fr2": math.ceil(fr2 / profile.max_abw_fr2),
    }
    name, need = max(bounds.items(), key=lambda kv: kv[1])
    return name if need > du_budget else "bin_packing"


def _plan_from_labels(arr: _Arrays, labels: np.ndarray, objective: Objective, exact: bool) -> PackingPlan:
    assignments = {}
    disabled = []
    for d, lab in zip(arr.demands, labels):
        if lab >= 0:
            assignments[d.cc_id] = int(lab)
        else:
            disabled.append(d.cc_id)
    dus = len(set(assignments.values()))
    if objective is Objective.MIN_DUS:
        value = float(dus)
    else:
        value = float(sum(d.profit for d in arr.demands if d.cc_id in assignments))
    return PackingPlan(assignments, dus, disabled, value, objective, exact)


def validate_plan(plan: PackingPlan, demands: Sequence[CellDemand], profile: DuProfile) -> List[Violation]:
    """Re-check a plan against the profile ceilings; empty list means valid."""
    out: List[Violation] = []
    by_id = {d.cc_id: d for d in demands}
    placed = set(plan.assignments) | set(plan.disabled)
    for cc in sorted(set(by_id) - placed):
        out.append(Violation("unaccounted_demand", 0, 1, cc))
    for cc in sorted(placed - set(by_id)):
        out.append(Violation("unknown_demand", 0, 1, cc))
    for cc in sorted(set(plan.assignments) & set(plan.disabled)):
        out.append(Violation("assigned_and_disabled", 0, 1, cc))
    used = sorted(set(plan.assignments.values()))
    if used != list(range(plan.dus_used)):
        out.append(Violation("du_indices", plan.dus_used, len(used)))
    for du in used:
        members = [by_id[c] for c, k in plan.assignments.items() if k == du and c in by_id]
        cells = sum(d.cells_required for d in members)
        fr1 = sum(d.bandwidth for d in members if d.fr is FrequencyRange.FR1)
        fr2 = sum(d.bandwidth for d in members if d.fr is FrequencyRange.FR2)
        tag = f"du{du}"
        if cells > profile.max_cells:
            out.append(Violation("max_cells", profile.max_cells, cells, tag))
        if fr1 >= profile.max_abw_fr1:
            out.append(Violation("max_abw_fr1", profile.max_abw_fr1, fr1, tag))
        if fr2 > profile.max_abw_fr2:
            out.append(Violation("max_abw_fr2", profile.max_abw_fr2, fr2, tag))
    return out


def validate_topology(plan: PackingPlan, topo: SiteTopology) -> List[Violation]:
    """Report vDU/site and site/vCU violations; never raises."""
    out = []
    if topo.vdus_per_site > MAX_VDUS_PER_SITE:
        out.append(Violation("vdus_per_site", MAX_VDUS_PER_SITE, topo.vdus_per_site))
    if plan.dus_used > min(topo.vdus_per_site, MAX_VDUS_PER_SITE):
        out.append(Violation("vdus_per_site", min(topo.vdus_per_site, MAX_VDUS_PER_SITE), plan.dus_used, "plan"))
    if topo.sites_per_vcu > MAX_SITES_PER_VCU:
        out.append(Violation("sites_per_vcu", MAX_SITES_PER_VCU, topo.sites_per_vcu))
    return out


# -- exact solver --------------------------------------------------------------

def _pack_exact(arr: _Arrays, profile: DuProfile, du_budget: int, objective: Objective) -> PackingPlan:
    n = len(arr.demands)
    ok = kern.feasible_masks(arr.cells, arr.fr1, arr.fr2, float(profile.max_cells),
                             float(profile.max_abw_fr1), float(profile.max_abw_fr2))
    f, choice = kern.min_partition(ok, n)
    full = (1 << n) - 1

    if objective is Objective.MIN_DUS:
        if f[full] > du_budget:
            raise InfeasiblePackingError(_binding_constraint(arr.demands, profile, du_budget), du_budget)
        keep = full
    else:
        masks = np.flatnonzero(f <= du_budget)
        bits = (masks[:, None] >> np.arange(n)) & 1
        prof = bits.astype(np.float64) @ arr.profit if n else np.zeros(masks.size)
        top = prof.max()
        cand = masks[prof == top]
        fewest = f[cand].min()
        cand = cand[f[cand] == fewest]
        keep = int(min(cand, key=lambda m: [i for i in range(n) if not (m >> i) & 1] + [-1] * n))

    labels = np.full(n, -1, np.int64)
    m, du = keep, 0
    while m:
        s = int(choice[m])
        for i in range(n):
            if (s >> i) & 1:
                labels[i] = du
        m ^= s
        du += 1
    return _plan_from_labels(arr, labels, objective, exact=True)


# -- heuristic for larger instances -------------------------------------------

class _Bins:
    def __init__(self, arr: _Arrays, profile: DuProfile):
        self.arr = arr
        self.p = profile
        self.load = []  # [cells, fr1, fr2] per bin
        self.items: List[List[int]] = []

    def fits(self, b, i, without=None):
        c, a1, a2 = self.load[b]
        if without is not None:
            c -= self.arr.cells[without]
            a1 -= self.arr.fr1[without]
            a2 -= self.arr.fr2[without]
        return (c + self.arr.cells[i] <= self.p.max_cells and a1 + self.arr.fr1[i] < self.p.max_abw_fr1
                and a2 + self.arr.fr2[i] <= self.p.max_abw_fr2)

    def add(self, b, i):
        if b == len(self.load):
            self.load.append([0.0, 0.0, 0.0])
            self.items.append([])
        ld = self.load[b]
        ld[0] += self.arr.cells[i]
        ld[1] += self.arr.fr1[i]
        ld[2] += self.arr.fr2[i]
        self.items[b].append(i)

    def remove(self, b, i):
        ld = self.load[b]
        ld[0] -= self.arr.cells[i]
        ld[1] -= self.arr.fr1[i]
        ld[2] -= self.arr.fr2[i]
        self.items[b].remove(i)

    def first_fit(self, i, limit):
        for b in range(len(self.load)):
            if self.fits(b, i):
                return b
        return len(self.load) if len(self.load) < limit else None

    def drop_empty(self):
        keep = [k for k in range(len(self.items)) if self.items[k]]
        self.load = [self.load[k] for k in keep]
        self.items = [self.items[k] for k in keep]

    def try_empty(self, victim) -> bool:
        """Move every item out of ``victim``, using single moves then swaps."""
        others = [b for b in range(len(self.load)) if b != victim]
        for i in sorted(self.items[victim], key=lambda i: -(self.arr.fr1[i] + self.arr.fr2[i])):
            dest = next((b for b in others if self.fits(b, i)), None)
            if dest is not None:
                self.remove(victim, i)
                self.add(dest, i)
                continue
            # swap i with a smaller j in another bin, j going back to victim
            moved = False
            for b in others:
                for j in list(self.items[b]):
                    if self.fits(b, i, without=j) and self.fits(victim, j, without=i) and \
                            self.arr.fr1[j] + self.arr.fr2[j] < self.arr.fr1[i] + self.arr.fr2[i]:
                        self.remove(victim, i)
                        self.remove(b, j)
                        self.add(b, i)
                        self.add(victim, j)
                        moved = True
                        break
                if moved:
                    break
            if not moved:
                return False
        return not self.items[victim]


def _snapshot(bins: _Bins):
    return [list(x) for x in bins.load], [list(x) for x in bins.items]


def _pack_heuristic(arr: _Arrays, profile: DuProfile, du_budget: int, objective: Objective) -> PackingPlan:
    n = len(arr.demands)
    size = arr.fr1 + arr.fr2
    bins = _Bins(arr, profile)

    if objective is Objective.MIN_DUS:
        for i in sorted(range(n), key=lambda i: (-size[i], -arr.cells[i], i)):
            b = bins.first_fit(i, limit=n)
            bins.add(b, i)
        improved = True
        while improved:
            improved = False
            for victim in sorted(range(len(bins.items)), key=lambda b: (len(bins.items[b]), b)):
                saved = _snapshot(bins)
                if bins.try_empty(victim):
                    bins.drop_empty()
                    improved = True
                    break
                bins.load, bins.items = saved
        if len(bins.items) > du_budget:
            raise InfeasiblePackingError(_binding_constraint(arr.demands, profile, du_budget), du_budget,
                                         f"heuristic packing needs {len(bins.items)} DUs > budget {du_budget}; "
                                         f"binding constraint: {_binding_constraint(arr.demands, profile, du_budget)}")
        kept = set(range(n))
    else:
        kept = set()
        for i in sorted(range(n), key=lambda i: (-arr.profit[i], size[i], i)):
            b = bins.first_fit(i, limit=du_budget)
            if b is not None:
                bins.add(b, i)
                kept.add(i)
        improved = True
        while improved:
            improved = False
            for i in sorted(set(range(n)) - kept, key=lambda i: (-arr.profit[i], i)):
                # insertion, then swap with a less profitable kept item
                b = bins.first_fit(i, limit=du_budget)
                if b is not None:
                    bins.add(b, i)
                    kept.add(i)
                    improved = True
                    break
                best = None
                for bb, members in enumerate(bins.items):
                    for j in members:
                        if arr.profit[j] < arr.profit[i] and bins.fits(bb, i, without=j):
                            if best is None or arr.profit[j] < arr.profit[best[1]]:
                                best = (bb, j)
                if best is not None:
                    bb, j = best
                    bins.remove(bb, j)
                    bins.add(bb, i)
                    kept.discard(j)
                    kept.add(i)
                    improved = True
                    break
        bins.drop_empty()

    labels = np.full(n, -1, np.int64)
    for b, members in enumerate(bins.items):
        for i in members:
            labels[i] = b
    return _plan_from_labels(arr, kern._canonical(labels), objective, exact=False)


def _check_args(profile: DuProfile, du_budget: int) -> None:
    if not isinstance(profile, DuProfile):
        raise ConfigError("profile must be a DuProfile")
    if int(du_budget) != du_budget or du_budget < 1:
        raise ConfigError(f"du_budget must be an integer >= 1, got {du_budget}")


def pack(demands: Sequence[CellDemand], profile: DuProfile, du_budget: int,
         objective: Objective | str = Objective.MIN_DUS) -> PackingPlan:
    """Assign demands to at most ``du_budget`` DUs.

    MIN_DUS places every demand on the fewest DUs; MAX_PROFIT keeps the most
    profitable feasible subset, breaking ties by fewer DUs and then by the
    lexicographically smallest list of disabled ``cc_id``s. Instances of up
    to twelve demands are solved exactly by a subset dynamic programme;
    larger ones use first-fit-decreasing plus local search and come back with
    ``exact=False``.
    """
    objective = Objective(objective)
    _check_args(profile, du_budget)
    demands = list(demands)
    _check_oversized(demands, profile)
    arr = _arrays(demands)
    if len(arr.demands) <= EXACT_LIMIT:
        plan = _pack_exact(arr, profile, int(du_budget), objective)
    else:
        plan = _pack_heuristic(arr, profile, int(du_budget), objective)
    problems = validate_plan(plan, demands, profile)
    if problems or plan.dus_used > du_budget:
        raise AssertionError(f"packer emitted an invalid plan: {problems}")
    return plan


def brute_force_pack(demands: Sequence[CellDemand], profile: DuProfile, du_budget: int,
                     objective: Objective | str = Objective.MIN_DUS) -> PackingPlan:
    """Exhaustive reference solver used as the exactness oracle for :func:`pack`."""
    objective = Objective(objective)
    _check_args(profile, du_budget)
    demands = list(demands)
    if len(demands) > ORACLE_MAX_DEMANDS or du_budget > ORACLE_MAX_DUS:
        raise InstanceTooLargeError(
            f"oracle handles at most {ORACLE_MAX_DEMANDS} demands and {ORACLE_MAX_DUS} DUs "
            f"(got {len(demands)}, {du_budget})"
        )
    _check_oversized(demands, profile)
    arr = _arrays(demands)
    mode = kern.MIN_DUS if objective is Objective.MIN_DUS else kern.MAX_PROFIT
    found, labels, _, _ = kern.enumerate_assignments(
        arr.cells, arr.fr1, arr.fr2, arr.profit, float(profile.max_cells),
        float(profile.max_abw_fr1), float(profile.max_abw_fr2), int(du_budget), mode)
    if not found:
        raise InfeasiblePackingError(_binding_constraint(arr.demands, profile, du_budget), du_budget)
    return _plan_from_labels(arr, np.asarray(labels), objective, exact=True)


def demands_from_carriers(carriers: Sequence[ComponentCarrier], profits: Dict[str, float] | None = None) -> List[CellDemand]:
    profits = profits or {}
    return [CellDemand.from_carrier(cc, profits.get(cc.id)) for cc in carriers]
