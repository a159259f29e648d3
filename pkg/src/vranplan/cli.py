"""Batch command-line front end.

Exit codes: 0 when every verdict passes, 2 when any verdict fails (or warns
under ``--strict``), 1 for unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import os
import sys
from pathlib import Path
from typing import Iterable, List, Optional

from . import __version__
from .addressing import GnbId, decode_string, encode_string, pack_32
from .errors import PlanningError
from .pipeline import _Verdicts, build_report, run_governance, run_slices
from .schema import PLAN_SCHEMA, validate_document

CONFIG_ENV = "VRANPLAN_CONFIG"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAIL = 2


class InputError(Exception):
    pass


def _load(path: Optional[str]) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        raise InputError(f"no input document (use --input or set {CONFIG_ENV})")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    problems = validate_document(doc)
    if problems:
        raise InputError("schema violation:\n  " + "\n  ".join(problems))
    return doc


def _timestamp(args) -> Optional[str]:
    if args.fixed_seed:
        return None
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def _emit(text: str, output: Optional[str]) -> None:
    if output and output != "-":
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _cell(v):
    if isinstance(v, dict):
        return ";".join(f"{k}={x}" for k, x in v.items())
    if isinstance(v, list):
        return "|".join(_cell(x) for x in v)
    return v


def _csv_tables(tables: Iterable[tuple]) -> str:
    buf = io.StringIO()
    for name, rows in tables:
        if not rows:
            continue
        buf.write(f"# {name}\n")
        cols = list(dict.fromkeys(k for r in rows for k in r))
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(v) for k, v in r.items()})
        buf.write("\n")
    return buf.getvalue()


def _plan_csv(report: dict) -> str:
    pk = report["packing"]
    assign = [{"cc_id": c, "du": d} for c, d in pk.get("assignments", {}).items()]
    assign += [{"cc_id": c, "du": "disabled"} for c in pk.get("disabled", [])]
    caps = [dict(rec, slice=s["id"]) for s in report["slices"] for rec in s.get("power_caps", [])]
    sweeps = [dict(row, path=f["id"]) for f in report["fronthaul"] for row in f.get("sweep", [])]
    curve = report["governance"].get("delay_cost", {}).get("curve", [])
    return _csv_tables([
        ("carriers", report["spectrum"]["carriers"]),
        ("packing", assign),
        ("gnb_ids", report["gnb_ids"]),
        ("fronthaul", [{k: v for k, v in f.items() if k != "sweep"} for f in report["fronthaul"]]),
        ("slack_vs_distance", sweeps),
        ("throughput", report["throughput"]["carriers"]),
        ("power_caps", caps),
        ("delay_cost_curve", curve),
        ("verdicts", report["verdicts"]),
    ])


def _summary(report: dict) -> str:
    s = report["summary"]
    lines = [f"vranplan {__version__}: {s['status']} ({s['fail']} fail, {s['warn']} warn)"]
    if "carriers" in s:
        lines.append(f"  carriers: {s['carriers']}  DUs used: {s['dus_used']}")
    for v in report["verdicts"]:
        if v["status"] != "PASS":
            subj = f" [{v['subject']}]" if v.get("subject") else ""
            lines.append(f"  {v['status']} {v['check']}{subj}: {v['binding_term']}")
    return "\n".join(lines) + "\n"


def _exit_for(status: str) -> int:
    return EXIT_FAIL if status == "FAIL" else EXIT_OK


def cmd_plan(args) -> int:
    doc = _load(args.input)
    report = build_report(doc, fixed=args.fixed_seed, strict=args.strict, timestamp=_timestamp(args))
    _emit(_plan_csv(report) if args.format == "csv" else _dump_json(report), args.output)
    sys.stderr.write(_summary(report))
    return _exit_for(report["summary"]["status"])


def cmd_slice(args) -> int:
    doc = _load(args.input)
    verdicts = _Verdicts()
    rows = run_slices(doc.get("slices", []), verdicts)
    report = {"tool": {"name": "vranplan", "version": __version__}, "slices": rows,
              "verdicts": verdicts.rows, "summary": {"status": verdicts.worst(args.strict),
                                                     "fail": sum(r["status"] == "FAIL" for r in verdicts.rows),
                                                     "warn": 0}}
    if args.format == "csv":
        text = _csv_tables([("power_caps", [dict(rec, slice=s["id"]) for s in rows
                                            for rec in s.get("power_caps", [])])])
    else:
        text = _dump_json(report)
    _emit(text, args.output)
    return _exit_for(report["summary"]["status"])


def cmd_govern(args) -> int:
    doc = _load(args.input)
    verdicts = _Verdicts()
    gov = run_governance(doc.get("governance", {}), verdicts)
    status = verdicts.worst(args.strict)
    report = {"tool": {"name": "vranplan", "version": __version__}, "governance": gov,
              "verdicts": verdicts.rows, "summary": {"status": status}}
    if args.format == "csv":
        text = _csv_tables([("delay_cost_curve", gov.get("delay_cost", {}).get("curve", [])),
                            ("verdicts", verdicts.rows)])
    else:
        text = _dump_json(report)
    _emit(text, args.output)
    return _exit_for(status)


def _gid(args) -> GnbId:
    return GnbId(args.market, args.vcu, args.vdu)


def cmd_encode_id(args) -> int:
    print(encode_string(_gid(args)))
    return EXIT_OK


def cmd_decode_id(args) -> int:
    gid = decode_string(args.text)
    print(f"{gid.market} {gid.vcu} {gid.vdu}")
    return EXIT_OK


def cmd_pack_id(args) -> int:
    packed = pack_32(_gid(args))
    print(f"{packed.value} {packed.hex}")
    return EXIT_OK


def cmd_schema(args) -> int:
    _emit(_dump_json(PLAN_SCHEMA), args.output)
    return EXIT_OK


def _doc_flags(p: argparse.ArgumentParser, formats=("json", "csv")) -> None:
    p.add_argument("-i", "--input", help=f"plan document (JSON); defaults to ${CONFIG_ENV}; '-' reads stdin")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--fixed-seed", "--no-timestamp", dest="fixed_seed", action="store_true",
                   help="omit the timestamp so identical input yields a byte-identical report")
    p.add_argument("--strict", action="store_true", help="treat WARN verdicts as FAIL")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vranplan", description="vRAN deployment planning checks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="run every analysis over a plan document")
    _doc_flags(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("slice", help="solve the slice power allocations in a document")
    _doc_flags(p)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("govern", help="run the governance checks in a document")
    _doc_flags(p)
    p.set_defaults(func=cmd_govern)

    for name, func, helptext in (("encode-id", cmd_encode_id, "render MMMCCCCDDDD"),
                                 ("pack-id", cmd_pack_id, "pack into the 32-bit gNB-ID")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("market", type=int)
        p.add_argument("vcu", type=int)
        p.add_argument("vdu", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("decode-id", help="split an 11-digit identifier")
    p.add_argument("text")
    p.set_defaults(func=cmd_decode_id)

    p = sub.add_parser("schema", help="print the plan document JSON schema")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_schema)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except PlanningError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
