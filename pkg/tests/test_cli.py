import json
import subprocess
import sys
from fractions import Fraction

import pytest

from selbergcert.certfile import embedded_text
from selbergcert.cli import ENV_PRECISION, main

REPORT_KEYS = {
    "certificate", "genus", "direction", "window", "expected", "verdict", "bound", "integer_bound",
    "reference", "reference_contained", "components", "sign_verdicts", "notes", "precision", "error",
}


@pytest.fixture
def cert_file(tmp_path):
    def write(name, text=None):
        p = tmp_path / f"{name}.cert"
        p.write_text(text if text is not None else embedded_text(name))
        return str(p)
    return write


def run_json(argv, capsys):
    code = main(argv + ["--report", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_run_verified_exit_zero(cert_file, capsys):
    assert main(["run", cert_file("genus2_a")]) == 0
    out = capsys.readouterr().out
    assert "VERIFIED" in out and "5.99284669868" in out


def test_run_failed_exit_one(cert_file, capsys):
    text = embedded_text("genus2_a").replace("expected = < 6", "expected = < 5")
    assert main(["run", cert_file("bad", text)]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_input_errors_exit_two(cert_file, capsys, tmp_path):
    assert main(["run", str(tmp_path / "nonexistent.cert")]) == 2
    assert main(["run", cert_file("broken", "[certificate]\nname = x\n")]) == 2
    assert main(["thresholds", "--genus", "1"]) == 2
    assert main(["run", "x.cert", "--precision", "-3"]) == 2
    assert main(["--no-such-flag"]) == 2
    err = capsys.readouterr().err
    assert "usage" in err and "error" in err


def test_json_schema_is_stable(cert_file, capsys):
    good = cert_file("bolza")
    bad = cert_file("bad", embedded_text("bolza").replace("systole_floor = 0", "systole_floor = 4"))
    c1, d1 = run_json(["run", good], capsys)
    c2, d2 = run_json(["run", bad], capsys)
    assert (c1, c2) == (0, 1)
    assert set(d1) == set(d2) == REPORT_KEYS
    assert set(d1["components"]) == set(d2["components"])
    assert d2["bound"] is None and d2["verdict"] == "failed"
    lo, hi = Fraction(d1["bound"]["lo"]), Fraction(d1["bound"]["hi"])
    assert lo < Fraction("3.53617865617108") < hi  # printed outward
    assert d1["integer_bound"] == 3


def test_quadrature_overrides(cert_file, capsys):
    code, doc = run_json(["run", cert_file("bolza"), "--cutoff", "50", "--quad-tol", "1e-9"], capsys)
    assert code == 0 and any("T = 50" in n for n in doc["notes"])


def test_thresholds_genus3(capsys):
    assert main(["thresholds", "--genus", "3"]) == 0
    out = capsys.readouterr().out
    assert "1.04407" in out and "0.71951" in out
    code, doc = run_json(["thresholds", "--genus", "3"], capsys)
    assert Fraction(doc["quarter_plus_epsilon"]["lo"]) >= Fraction("1.044071")
    assert "ros" in doc["caps"]


def test_geodesics(capsys):
    code, doc = run_json(["geodesics", "klein"], capsys)
    assert code == 0 and [e["multiplicity"] for e in doc["entries"]] == [21, 28]
    assert abs(Fraction(doc["systole"]["lo"]) - Fraction("3.935946")) < Fraction(1, 2 * 10**6)


def test_environment_precision(cert_file, capsys, monkeypatch):
    monkeypatch.setenv(ENV_PRECISION, "200")
    _, doc = run_json(["run", cert_file("bolza")], capsys)
    assert doc["precision"] == 200
    _, doc = run_json(["run", cert_file("bolza"), "--precision", "96"], capsys)
    assert doc["precision"] == 96
    monkeypatch.setenv(ENV_PRECISION, "lots")
    assert main(["run", cert_file("bolza")]) == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["geodesics", "bolza", "--report", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert len(json.loads(target.read_text())["entries"]) == 3


def test_show_round_trips(capsys):
    assert main(["show", "lem_f0"]) == 0
    assert capsys.readouterr().out == embedded_text("lem_f0")


def test_bundle_bolza(capsys):
    code, doc = run_json(["bundle", "bolza"], capsys)
    assert code == 0 and doc["all_verified"]
    assert doc["analyses"][0]["conclusion"].startswith("m_1(B) <= 3")
    assert set(doc["certificates"][0]) == REPORT_KEYS


def test_bundle_all_table(capsys):
    assert main(["bundle", "paper", "--jobs", "2"]) == 0
    out = capsys.readouterr().out
    for name in ("lem_f0", "lem_f1", "klein_less6", "klein_less12", "klein_more7",
                 "genus2_a", "genus2_b", "genus2_c", "bolza"):
        assert name in out
    for printed in ("8.95625495601736", "11.7388106033274", "3.53617865617108"):
        assert printed in out
    for conclusion in ("m_1(S) <= 8", "m_1(K) = 8", "m_1(S) <= 6", "m_1(B) <= 3"):
        assert conclusion in out


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "selbergcert.cli", "geodesics", "bolza"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "5.82807" in proc.stdout
