"""Run every analysis over a plan document and assemble the report."""
from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from typing import Dict, List

from . import __version__
from .addressing import HINT_PREFIX, BandHint, GnbId, band_class_from_vdu, encode_string, pack_32
from .errors import (ConvergenceError, InfeasiblePackingError, InvalidHoldingError, OversizedDemandError,
                     PlanningError)
from .governance import (ClockConfig, DelayCostModel, Status, VarietyLedger, check_clock_hierarchy,
                         check_requisite_variety, delay_cost_curve)
from .latency import FronthaulPath, HarqBudget, check_placement, slack_vs_distance
from .overhead import CipherConfig, DssConfig, apply_penalties
from .packing import (CellDemand, DuProfile, Objective, SiteTopology, pack,
                      validate_topology)
from .slicing import SliceProblem, UeEntry, dual_ascent, grid_oracle
from .spectrum import (BandClass, ComponentCarrier, SpectrumBlock, ca_group, classify_band, contiguity_partition,
                       plan_carriers)

_CLASS_HINT = {BandClass.LOW: BandHint.LOW, BandClass.MID: BandHint.MID, BandClass.HIGH: BandHint.UWB}
_CLASS_RANK = {BandClass.LOW: 0, BandClass.MID: 1, BandClass.HIGH: 2}


def input_digest(doc) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()


class _Verdicts:
    def __init__(self):
        self.rows: List[dict] = []

    def add(self, check: str, status: str, binding_term: str = "", subject: str = ""):
        row = {"check": check, "subject": subject, "status": status}
        if status != "PASS":
            row["binding_term"] = binding_term or check
        self.rows.append(row)

    def worst(self, strict: bool = False) -> str:
        states = {r["status"] for r in self.rows}
        if "FAIL" in states or (strict and "WARN" in states):
            return "FAIL"
        return "WARN" if "WARN" in states else "PASS"


def _blocks(doc) -> List[SpectrumBlock]:
    out = []
    for b in doc.get("holdings", []):
        blk = SpectrumBlock(b["carrier_label"], b["band"], float(b["f_low"]), float(b["f_high"]), b.get("profit"))
        # a declared width must agree with the edges
        if "bandwidth" in b and b["bandwidth"] != blk.bandwidth:
            raise InvalidHoldingError(f"{blk.carrier_label}: declared bandwidth {b['bandwidth']} MHz but "
                                      f"{blk.f_low:g}-{blk.f_high:g} MHz spans {blk.bandwidth:g} MHz")
        out.append(blk)
    return out


def _cc_profit(cc: ComponentCarrier, blocks: Dict[str, SpectrumBlock]) -> float:
    # a block's profit is shared pro rata by the CCs that carve it
    total = 0.0
    for label in cc.members:
        b = blocks[label]
        share = (min(cc.f_high, b.f_high) - max(cc.f_low, b.f_low)) / b.bandwidth
        total += share * (b.bandwidth if b.profit is None else b.profit)
    return total


def _du_hint(members: List[ComponentCarrier], blocks) -> BandHint:
    weight = defaultdict(float)
    for cc in members:
        weight[classify_band(blocks[cc.members[0]])[0]] += cc.bandwidth
    cls = max(weight, key=lambda c: (weight[c], _CLASS_RANK[c]))
    return _CLASS_HINT[cls]


def _gnb_ids(plan, carriers, blocks, addressing, verdicts) -> List[dict]:
    by_id = {cc.id: cc for cc in carriers}
    market, vcu = addressing.get("market", 0), addressing.get("vcu", 0)
    seq = defaultdict(int)
    rows = []
    for du, members in enumerate(plan.du_members()):
        hint = _du_hint([by_id[m] for m in members], blocks)
        seq[hint] += 1
        vdu = HINT_PREFIX[hint] * 1000 + seq[hint]
        gid = GnbId(market, vcu, vdu)
        row = {"du": du, "id": encode_string(gid), "band_hint": band_class_from_vdu(vdu).value,
               "carriers": members}
        try:
            packed = pack_32(gid)
            row["packed"] = packed.value
            row["packed_hex"] = packed.hex
        except PlanningError as exc:
            row["packed"] = None
            row["pack_error"] = str(exc)
            verdicts.add("gnb_id_pack", "WARN", type(exc).__name__, row["id"])
        rows.append(row)
    return rows


def _spectrum_section(doc, verdicts):
    blocks = _blocks(doc)
    by_label = {b.carrier_label: b for b in blocks}
    prof = doc.get("du_profile", {})
    runs = contiguity_partition(blocks)
    carriers = plan_carriers(blocks, prof.get("cc_cap_fr1", 100.0), prof.get("cc_cap_fr2", 100.0))
    groups = []
    for g in doc.get("ca_groups", []):
        unknown = sorted(set(g["carriers"]) - set(by_label))
        if unknown:
            raise InvalidHoldingError(f"ca_groups/{g['label']}: unknown carrier label(s) {unknown}")
        wanted = set(g["carriers"])
        grp = ca_group(g["label"], [cc for cc in carriers if wanted & set(cc.members)])
        groups.append({"label": grp.label, "bands": list(grp.bands), "carriers": [cc.id for cc in grp.carriers],
                       "total_bandwidth": grp.total_bandwidth})
    section = {
        "runs": [{"band": r[0].band, "f_low": r[0].f_low, "f_high": r[-1].f_high,
                  "bandwidth": r[-1].f_high - r[0].f_low, "members": [b.carrier_label for b in r]} for r in runs],
        "carriers": [{"id": cc.id, "band": cc.band, "fr": cc.fr.value,
                      "band_class": classify_band(by_label[cc.members[0]])[0].value,
                      "f_low": cc.f_low, "f_high": cc.f_high, "bandwidth": cc.bandwidth,
                      "members": list(cc.members), "aggregated": cc.aggregated} for cc in carriers],
        "ca_groups": groups,
    }
    return section, carriers, by_label


def _packing_section(doc, carriers, blocks, verdicts):
    p = doc.get("du_profile", {})
    profile = DuProfile(p.get("max_cells", 18), p.get("max_abw_fr1", 160.0), p.get("max_abw_fr2", 400.0),
                        p.get("cost", 1.0))
    t = doc.get("topology", {})
    topo = SiteTopology(t.get("vdus_per_site", 4), t.get("sites_per_vcu", 1))
    solver = doc.get("solver", {})
    objective = Objective(solver.get("objective", "MIN_DUS"))
    budget = solver.get("du_budget", topo.vdus_per_site)
    demands = [CellDemand(cc.id, cc.bandwidth, cc.fr, _cc_profit(cc, blocks)) for cc in carriers]

    section = {"objective": objective.value, "du_budget": budget,
               "profile": {"max_cells": profile.max_cells, "max_abw_fr1": profile.max_abw_fr1,
                           "max_abw_fr2": profile.max_abw_fr2, "cost": profile.cost}}
    try:
        plan = pack(demands, profile, budget, objective)
    except (InfeasiblePackingError, OversizedDemandError) as exc:
        section.update({"status": "FAIL", "constraint": exc.constraint, "error": str(exc)})
        verdicts.add("packing", "FAIL", exc.constraint)
        return section, None
    section.update(plan.to_dict())
    section["du_cost"] = plan.dus_used * profile.cost
    section["cells_used"] = len(plan.assignments)
    violations = validate_topology(plan, topo)
    section["topology_violations"] = [{"constraint": v.constraint, "limit": v.limit, "actual": v.actual}
                                      for v in violations]
    section["status"] = "FAIL" if violations else "PASS"
    if violations:
        for v in violations:
            verdicts.add("topology", "FAIL", v.constraint)
    else:
        verdicts.add("packing", "PASS")
    return section, plan


def _fronthaul_section(doc, verdicts):
    rows = []
    for fp in doc.get("fronthaul", []):
        path = FronthaulPath(fp["fiber_km"], fp.get("hops", 0), fp.get("per_hop_delay_us", 40.0),
                             fp.get("per_km_delay_us", 5.0), fp["id"])
        budget = HarqBudget(fp.get("fr", "FR1"), fp.get("harq_budget_us"))
        req, crypto = fp.get("required_compute_us", 0.0), fp.get("crypto_us", 0.0)
        rep = check_placement(path, budget, req, crypto)
        row = {"id": fp["id"], "fr": budget.fr.value, **rep.to_dict()}
        if "sweep_km" in fp:
            row["sweep"] = slack_vs_distance(path, budget, fp["sweep_km"], req, crypto)
        rows.append(row)
        verdicts.add("fronthaul", rep.verdict.value, rep.binding_term, fp["id"])
    return rows


def _throughput_section(doc, carriers):
    sec = doc.get("security", {})
    se = sec.get("spectral_efficiency_bps_per_hz")
    cipher = CipherConfig(**sec["cipher"]) if "cipher" in sec else CipherConfig()
    dss = DssConfig(**sec["dss"]) if "dss" in sec else DssConfig()
    out = {"cipher": {"mode": cipher.mode.value, "penalty": cipher.penalty},
           "dss": {"mode": dss.mode.value, "penalty": dss.penalty}, "carriers": []}
    if se is not None:
        for cc in carriers:
            est = apply_penalties(cc.bandwidth * se, cipher, dss)
            out["carriers"].append({"id": cc.id, **est.to_dict()})
    return out


def run_slices(slices, verdicts) -> List[dict]:
    rows = []
    for s in slices:
        users = [UeEntry(u["id"], u["gain"], u.get("weight", 1.0), u.get("intent", {})) for u in s["users"]]
        problem = SliceProblem(users, s["p_max"], s["id"])
        row = {"id": s["id"], "p_max": s["p_max"]}
        try:
            alloc = dual_ascent(problem, step=s.get("step"), tol=s.get("tol", 1e-6),
                                max_iter=s.get("max_iter", 10_000))
        except ConvergenceError as exc:
            row.update({"status": "FAIL", "error": str(exc)})
            if exc.last is not None:
                row.update(exc.last.to_dict())
            verdicts.add("slice", "FAIL", "convergence", s["id"])
            rows.append(row)
            continue
        row["status"] = "PASS"
        row.update(alloc.to_dict())
        if "oracle_resolution" in s and len(users) <= 3:
            ref = grid_oracle(problem, resolution=s["oracle_resolution"])
            row["oracle"] = {"resolution": s["oracle_resolution"], "objective": ref.objective,
                             "p": [float(x) for x in ref.p], "objective_gap": alloc.objective - ref.objective}
        verdicts.add("slice", "PASS", subject=s["id"])
        rows.append(row)
    return rows


def run_governance(gov, verdicts) -> dict:
    out = {}
    if "delay_cost" in gov:
        dc = gov["delay_cost"]
        model = DelayCostModel(dc["base_cost"], dc["tau_c"])
        out["delay_cost"] = {"base_cost": model.base_cost, "tau_c": model.tau_c,
                             "curve": delay_cost_curve(model, dc.get("taus", []))}
    if "clock" in gov:
        diag = check_clock_hierarchy(ClockConfig(**gov["clock"]))
        out["clock"] = diag.to_dict()
        verdicts.add("clock_hierarchy", diag.status.value, diag.binding_term)
    if "variety" in gov:
        v = gov["variety"]
        status = check_requisite_variety(VarietyLedger(v["v_internal"], v["v_external"]))
        out["variety"] = {"v_internal": v["v_internal"], "v_external": v["v_external"], "status": status.value}
        verdicts.add("requisite_variety", status.value, "v_internal" if status is Status.FAIL else "")
    return out


def build_report(doc: dict, *, fixed: bool = False, strict: bool = False, timestamp: str | None = None) -> dict:
    """Run spectrum, packing, addressing, latency, overhead, slicing and governance checks.

    Raises the domain errors of the individual modules for malformed input;
    planning outcomes (an infeasible packing, a missed deadline) become
    FAIL verdicts in the report instead.
    """
    verdicts = _Verdicts()
    spectrum, carriers, blocks = _spectrum_section(doc, verdicts)
    packing, plan = _packing_section(doc, carriers, blocks, verdicts)
    gnb = _gnb_ids(plan, carriers, blocks, doc.get("addressing", {}), verdicts) if plan else []
    report = {
        "tool": {"name": "vranplan", "version": __version__},
        "input_digest": input_digest(doc),
    }
    if not fixed and timestamp:
        report["generated_at"] = timestamp
    report.update({
        "spectrum": spectrum,
        "packing": packing,
        "gnb_ids": gnb,
        "fronthaul": _fronthaul_section(doc, verdicts),
        "throughput": _throughput_section(doc, carriers),
        "slices": run_slices(doc.get("slices", []), verdicts),
        "governance": run_governance(doc.get("governance", {}), verdicts),
    })
    report["verdicts"] = verdicts.rows
    report["summary"] = {
        "status": verdicts.worst(strict),
        "fail": sum(r["status"] == "FAIL" for r in verdicts.rows),
        "warn": sum(r["status"] == "WARN" for r in verdicts.rows),
        "carriers": len(carriers),
        "dus_used": plan.dus_used if plan else None,
    }
    return report
