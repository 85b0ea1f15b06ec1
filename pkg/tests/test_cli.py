import io
import json
import subprocess
import sys

import jsonschema
import pytest

from brwdec.cli import REPORT_SCHEMA, exit_code, run
from brwdec.cnf import cnf_parse, cnf_print
from brwdec.selftest import cli_corpus


def ord_(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def as_json(*argv):
    code, out, _ = ord_(*argv, "--format", "json")
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    return code, report


@pytest.mark.parametrize("text", cli_corpus())
def test_eval_round_trips(text):
    code, out, _ = ord_("eval", text)
    assert code == 0
    assert out.strip() == text
    assert cnf_print(cnf_parse(out.strip())) == text


def test_eval_normalizes():
    assert ord_("eval", "w*2+w")[1].strip() == "w*3"
    assert ord_("eval", "w + w^2")[1].strip() == "w^2"


def test_eval_unannotated_subject():
    code, out, _ = ord_("eval", "psi(twin-primes(50))")
    assert code == 0
    assert "no normal form" in out
    assert "sequence:" in out


def test_cmp_examples():
    code, out, _ = ord_("cmp", "w*2", "w^2", "--fuel", "1000")
    assert code == 0 and out.strip() == "Proven (LT via annotation)"
    code, out, _ = ord_("cmp", "w^2", "w*2")
    assert code == 1 and "GT" in out
    code, out, _ = ord_("cmp", "w", "round-up(3)")
    assert code == 0 and "EQ" in out


def test_probe_twin_primes():
    code, out, _ = ord_("probe", "psi(twin-primes(5000))", "w*4", "--fuel", "200000")
    assert code == 0
    lines = out.splitlines()
    for k, line in zip(["w", "w*2", "w*3", "w*4"], lines):
        assert line.split()[:2] == [k, "Proven"]
    assert lines[-1] == "summary: w*4 -> Proven"


def test_probe_ladder_below_unreachable_target():
    code, report = as_json("probe", "w*3", "w^2", "--k-max", "4")
    assert code == 1
    assert [lv["verdict"] for lv in report["levels"]] == ["Proven", "Proven", "Proven", "Refuted"]


def test_jump_prefix():
    code, out, _ = ord_("jump", "001:zeros")
    assert code == 0
    assert out.strip() == "0, 1, 2, w, w + 1, w + 2, ..."
    assert ord_("jump", "1:zeros", "--double", "--count", "3")[1].strip() == "0, w*2, w*2 + 1, ..."


def test_psi_modes():
    assert ord_("psi", "const-true")[0] == 0
    assert ord_("psi", "single-true(2)", "--mode", "exists")[0] == 0
    assert ord_("psi", "const-false", "--mode", "exists", "--fuel", "5000")[0] == 1
    assert ord_("psi", "threshold(5)", "--mode", "exists-forall")[0] == 0
    assert ord_("psi", "diagonal", "--mode", "exists-forall", "--fuel", "5000")[0] == 2


def test_sierp():
    assert ord_("sierp", "2", "w*2")[0] == 0
    assert ord_("sierp", "3", "w*2", "--fuel", "2000")[0] == 2
    assert ord_("sierp", "2", "5")[0] == 1
    assert ord_("sierp", "0", "0")[0] == 0


def test_families_lists_registry():
    code, out, _ = ord_("families")
    assert code == 0 and "twin-primes" in out and "threshold" in out


@pytest.mark.parametrize("argv", [
    ["cmp", "w +", "1"],
    ["probe", "w", "psi(const-true)"],
    ["psi", "nope"],
    ["psi", "const-true", "--mode", "exists-forall"],
    ["bogus"],
    ["probe", "w", "w", "--fuel", "0"],
    ["probe", "w", "w", "--k-max", "-1"],
    ["jump", "012:zeros"],
    ["sierp", "-1", "w"],
    [],
])
def test_usage_errors_exit_64(argv):
    code, out, err = ord_(*argv)
    assert code == 64
    assert err and not out


def test_parse_error_reports_position():
    _, _, err = ord_("eval", "w + $")
    assert "position 4" in err


def test_registry_error_lists_names():
    _, _, err = ord_("psi", "nope")
    assert "available:" in err and "const-true" in err


def test_json_reports_validate_and_exit_matches_summary():
    for argv in (["cmp", "w", "w*2"], ["probe", "w*2", "w + 1"], ["eval", "w^w"],
                 ["jump", "ones"], ["psi", "const-false", "--fuel", "3000"], ["sierp", "1", "w"],
                 ["families"]):
        code, report = as_json(*argv)
        assert report["exit"] == code == exit_code(report["summary"])


def test_env_fuel(monkeypatch):
    monkeypatch.setenv("BRWDEC_FUEL", "5")
    _, report = as_json("cmp", "lim-min(psi(twin-primes(100)), w*3)", "w*2")
    assert report["summary"] == "Unknown" and report["fuel_spent"] == 5
    monkeypatch.setenv("BRWDEC_FUEL", "lots")
    assert ord_("cmp", "1", "2")[0] == 64


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "brwdec", "cmp", "w*2", "w^2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "Proven (LT via annotation)"
    proc = subprocess.run([sys.executable, "-m", "brwdec", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "selftest" in proc.stdout
