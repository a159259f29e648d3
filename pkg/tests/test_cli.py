import json
import subprocess
import sys

import pytest

from vranplan.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from vranplan.pipeline import build_report
from vranplan.schema import validate_document

from conftest import load_fixture


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_plan_scenario1(fixture_path, capsys):
    code, out, err = run(["plan", "-i", fixture_path("scenario1.json"), "--fixed-seed"], capsys)
    assert code == EXIT_OK
    rep = json.loads(out)
    assert [(c["id"], c["bandwidth"]) for c in rep["spectrum"]["carriers"]] == [("c1+c2+c3", 25), ("c7", 15)]
    assert rep["packing"]["dus_used"] == 1
    assert rep["fronthaul"][0]["one_way_us"] == 145
    assert rep["fronthaul"][0]["compute_slack_us"] == 210
    assert "generated_at" not in rep
    assert "carriers: 2" in err


def test_plan_timestamp_without_fixed_seed(fixture_path, capsys):
    code, out, _ = run(["plan", "-i", fixture_path("scenario1.json")], capsys)
    assert code == EXIT_OK and "generated_at" in json.loads(out)


def test_strict_turns_warn_into_fail(fixture_path, capsys):
    # the vDU suffix 7001 overflows the packed form, which is a WARN
    code, out, _ = run(["plan", "-i", fixture_path("scenario1.json"), "--fixed-seed"], capsys)
    assert any(v["status"] == "WARN" for v in json.loads(out)["verdicts"])
    code, _, _ = run(["plan", "-i", fixture_path("scenario1.json"), "--fixed-seed", "--strict"], capsys)
    assert code == EXIT_FAIL


def test_scenario2_uses_more_cells(fixture_path, capsys):
    _, out1, _ = run(["plan", "-i", fixture_path("scenario1.json"), "--fixed-seed"], capsys)
    _, out2, _ = run(["plan", "-i", fixture_path("scenario2.json"), "--fixed-seed"], capsys)
    r1, r2 = json.loads(out1), json.loads(out2)
    assert [c["bandwidth"] for c in r2["spectrum"]["carriers"]] == [10, 5, 15]
    assert r2["packing"]["cells_used"] > r1["packing"]["cells_used"]


def test_determinism_in_subprocess(fixture_path, tmp_path):
    outs = []
    for k in range(2):
        dest = tmp_path / f"r{k}.json"
        subprocess.run([sys.executable, "-m", "vranplan", "plan", "-i", fixture_path("scenario1.json"),
                        "--fixed-seed", "-o", str(dest)], check=True, capture_output=True)
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]


def test_config_from_env(fixture_path, capsys, monkeypatch):
    monkeypatch.setenv("VRANPLAN_CONFIG", fixture_path("scenario3.json"))
    code, out, _ = run(["plan", "--fixed-seed"], capsys)
    assert code == EXIT_OK
    assert [c["bandwidth"] for c in json.loads(out)["spectrum"]["carriers"]] == [100] * 4


def test_input_errors(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("VRANPLAN_CONFIG", raising=False)
    assert run(["plan"], capsys)[0] == EXIT_INPUT
    assert run(["plan", "-i", str(tmp_path / "missing.json")], capsys)[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["plan", "-i", str(bad)], capsys)
    assert code == EXIT_INPUT and "line 1" in err
    bad.write_text(json.dumps({"holdings": [{"carrier_label": "x"}]}))
    code, _, err = run(["plan", "-i", str(bad)], capsys)
    assert code == EXIT_INPUT and "schema violation" in err
    bad.write_text(json.dumps({"holdings": [{"carrier_label": "x", "band": "n4", "f_low": 900, "f_high": 1100}]}))
    code, _, err = run(["plan", "-i", str(bad)], capsys)
    assert code == EXIT_INPUT and "UnclassifiableBandError" in err


def test_declared_bandwidth_mismatch(tmp_path, capsys):
    doc = {"holdings": [{"carrier_label": "c7", "band": "n7", "f_low": 2675, "f_high": 2700, "bandwidth": 15}]}
    path = tmp_path / "c7.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(["plan", "-i", str(path)], capsys)
    assert code == EXIT_INPUT and "InvalidHoldingError" in err


def test_infeasible_packing_is_fail(tmp_path, capsys):
    doc = load_fixture("scenario3.json")
    doc["du_profile"] = {"max_abw_fr2": 150}
    doc["solver"] = {"du_budget": 2}
    path = tmp_path / "tight.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run(["plan", "-i", str(path), "--fixed-seed"], capsys)
    assert code == EXIT_FAIL
    assert json.loads(out)["packing"]["constraint"] == "max_abw_fr2"


def test_empty_holding(fixture_path, capsys):
    code, out, _ = run(["plan", "-i", fixture_path("empty.json"), "--fixed-seed"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["summary"]["carriers"] == 0


def test_stdin_and_csv(fixture_path, capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(open(fixture_path("scenario1.json")).read()))
    code, out, _ = run(["plan", "-i", "-", "--fixed-seed", "--format", "csv"], capsys)
    assert code == EXIT_OK
    assert "# carriers\n" in out and "# verdicts\n" in out
    assert "c1+c2+c3,n4,FR1" in out


def test_slice_command(fixture_path, capsys):
    code, out, _ = run(["slice", "-i", fixture_path("slices.json")], capsys)
    assert code == EXIT_OK
    rows = {s["id"]: s for s in json.loads(out)["slices"]}
    assert [c["p_max"] for c in rows["sym"]["power_caps"]] == pytest.approx([5, 5], abs=1e-6)
    assert rows["single"]["power_caps"][0]["p_max"] == pytest.approx(10)
    assert abs(rows["asym"]["oracle"]["objective_gap"]) <= 1e-3
    assert rows["asym"]["power_caps"][0]["intent"] == {"class": "latency"}
    code, out, _ = run(["slice", "-i", fixture_path("slices.json"), "--format", "csv"], capsys)
    assert out.startswith("# power_caps\n")


def test_govern_command(fixture_path, capsys):
    assert run(["govern", "-i", fixture_path("scenario1.json")], capsys)[0] == EXIT_OK
    code, out, _ = run(["govern", "-i", fixture_path("governance_fail.json")], capsys)
    assert code == EXIT_FAIL
    gov = json.loads(out)["governance"]
    assert gov["clock"]["status"] == "FAIL" and gov["variety"]["status"] == "FAIL"
    assert gov["delay_cost"]["curve"][0]["cost"] == 2.0


def test_id_commands(capsys):
    assert run(["encode-id", "1", "2", "7003"], capsys)[1] == "00100027003\n"
    assert run(["decode-id", "00000000000"], capsys)[1] == "0 0 0\n"
    code, _, err = run(["pack-id", "999", "9999", "0"], capsys)
    assert code == EXIT_INPUT and "PrefixOverflowError" in err
    assert run(["encode-id", "1", "2", "7001"], capsys) == (EXIT_OK, "00100027001\n", "")
    assert run(["decode-id", "00100027001"], capsys) == (EXIT_OK, "1 2 7001\n", "")
    assert run(["pack-id", "1", "2", "3"], capsys) == (EXIT_OK, f"{(10002 << 12) | 3} 0x{(10002 << 12) | 3:08X}\n", "")
    code, _, err = run(["pack-id", "1", "2", "7001"], capsys)
    assert code == EXIT_INPUT and "SuffixOverflowError" in err
    assert run(["decode-id", "12"], capsys)[0] == EXIT_INPUT
    assert run(["encode-id", "1000", "0", "0"], capsys)[0] == EXIT_INPUT


def test_schema_command(capsys):
    code, out, _ = run(["schema"], capsys)
    assert code == EXIT_OK
    assert json.loads(out)["$schema"].endswith("2020-12/schema")


def test_fixtures_are_schema_valid():
    for name in ("scenario1.json", "scenario2.json", "scenario3.json", "empty.json", "slices.json",
                 "governance_fail.json"):
        assert validate_document(load_fixture(name)) == []


def test_report_digest_tracks_input():
    a = build_report(load_fixture("scenario1.json"), fixed=True)
    b = build_report(load_fixture("scenario2.json"), fixed=True)
    assert a["input_digest"] != b["input_digest"]
    assert build_report(load_fixture("scenario1.json"), fixed=True) == a


def _fail_rows_named(report):
    return all((v["binding_term"] or "") != "" for v in report["verdicts"] if v["status"] == "FAIL")


def test_every_fail_names_its_cause(tmp_path):
    gov = build_report(load_fixture("governance_fail.json"), fixed=True)
    assert any(v["status"] == "FAIL" for v in gov["verdicts"]) and _fail_rows_named(gov)
    doc = load_fixture("scenario1.json")
    doc["fronthaul"][0]["fiber_km"] = 60
    late = build_report(doc, fixed=True)
    assert late["summary"]["status"] == "FAIL" and _fail_rows_named(late)


def test_report_ids_come_from_input():
    doc = load_fixture("scenario1.json")
    rep = build_report(doc, fixed=True)
    labels = {h["carrier_label"] for h in doc["holdings"]}
    for cc in rep["spectrum"]["carriers"]:
        assert set(cc["members"]) <= labels
    assert set(rep["packing"]["assignments"]) == {cc["id"] for cc in rep["spectrum"]["carriers"]}
    assert {f["id"] for f in rep["fronthaul"]} == {f["id"] for f in doc["fronthaul"]}
    ues = {u["id"] for s in doc["slices"] for u in s["users"]}
    assert {c["ue"] for s in rep["slices"] for c in s["power_caps"]} == ues
