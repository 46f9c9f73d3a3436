import json
import os
import subprocess
from pathlib import Path

import pytest

import slp

CORPUS = Path(os.environ.get("SLP_CORPUS_DIR", Path(__file__).resolve().parents[2] / "corpus"))
CLI = os.environ.get("SLP_CLI")


def test_load_and_summary():
    model = slp.load(CORPUS / "heater.slp")
    assert model.name == "heater"
    assert model.processes == ["heater_control", "alarm_control"]
    report = model.check()
    assert report["summary"]["violated"] == 0
    assert report["summary"]["discharged"] == report["summary"]["total"] > 0


def test_assert_chain_violations():
    report = slp.check(CORPUS / "asserts.slp", filter="*.ASN")
    bad = sorted(p["id"] for p in report["pos"] if p["verdict"] == "violated")
    assert bad == ["one_assert._3.ASN", "three_asserts._3.ASN", "three_asserts._5.ASN", "two_asserts._4.ASN"]


def test_obligations():
    model = slp.load(CORPUS / "asserts.slp")
    chained = model.obligations("chained.*.ASN")
    assert [p["sequent"] for p in chained] == ["HYP |- e : s \\/ {e}", "HYP, e : s |- s /= {}"]
    assert model.obligations("no.such.*") == []


def test_workers_do_not_change_the_report():
    model = slp.load(CORPUS / "asserts.slp")
    assert model.check() == model.check(workers=4)


def test_export_smt():
    model = slp.load(CORPUS / "heater.slp")
    script = model.export_smt("heater_control.rel1.CLO_RELY_TRANS")
    assert "(check-sat)" in script
    with pytest.raises(slp.SlpError) as err:
        model.export_smt("missing")
    assert err.value.code == "no-such-po"


def test_errors_carry_codes():
    with pytest.raises(slp.SlpError) as err:
        slp.Model("MODEL x\nVARIABLES\n")
    assert err.value.code == "parse-error"
    assert err.value.line == 3
    with pytest.raises(slp.SlpError) as err:
        slp.load(CORPUS / "missing.slp")
    assert err.value.code == "io-error"


def test_traces_and_write_sets():
    model = slp.load(CORPUS / "gcd1b.slp")
    assert sorted(model.write_sets()["main"]) == ["r", "y1", "y2"]
    traces = model.process_traces("main", depth=2)
    assert [] in traces and [["cp1"]] in traces and [["cp1"], ["cp2"]] in traces


@pytest.mark.skipif(not CLI, reason="command-line tool not configured")
def test_cli(tmp_path):
    out = tmp_path / "r.json"
    rc = subprocess.run([CLI, "check", str(CORPUS / "heater.slp"), "--json", str(out)],
                        capture_output=True).returncode
    assert rc == 0
    assert json.loads(out.read_text())["summary"]["violated"] == 0
    assert subprocess.run([CLI, "check", str(CORPUS / "asserts.slp")], capture_output=True).returncode == 1
    assert subprocess.run([CLI, "parse", str(tmp_path / "none.slp")], capture_output=True).returncode == 2
