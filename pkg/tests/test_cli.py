import csv
import json
import subprocess
import sys

import pytest

from superfactor.cli import CSV_COLUMNS, main

CIRCULAR = "2,0,1.5707963,0,0,1"
GENERIC = "1.4,0.15,1.1,0.3,0.2,0.5"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_quantum_ho(capsys):
    code, out, _ = run(capsys, "verify", "quantum", "--system", "ho", "--lmax", "4", "--nmax", "6", "--quiet")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "1" and doc["passed"]
    assert any(c["group"] == "spectrum" for c in doc["checks"])


def test_verify_quantum_float_mode(capsys):
    code, out, err = run(capsys, "verify", "quantum", "--system", "kc", "--k", "2", "--float", "--samples", "5")
    assert code == 0 and json.loads(out)["params"]["exact"] is False
    assert "PASS" in err


def test_verify_classical_kc(capsys):
    code, out, _ = run(capsys, "verify", "classical", "--system", "kc", "--samples", "100",
                       "--bracket-samples", "40", "--seed", "7", "--quiet")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["params"]["seed"] == 7


def test_tolerance_override_makes_run_fail(capsys):
    code, out, _ = run(capsys, "verify", "classical", "--system", "ho", "--samples", "50",
                       "--bracket-samples", "20", "--gradient-tol", "1e-16", "--quiet")
    assert code == 1 and not json.loads(out)["passed"]


def test_action_angle_flag_reports_red_cross_brackets(capsys):
    code, out, _ = run(capsys, "verify", "classical", "--system", "ho", "--samples", "20",
                       "--bracket-samples", "10", "--action-angle", "--aa-samples", "10", "--quiet")
    failed = {c["name"] for c in json.loads(out)["checks"] if not c["passed"]}
    assert code == 1 and failed == {"{xi_phi, J_theta} = 0", "{xi_theta, J_r} = 0"}


def test_seed_env_override(capsys, monkeypatch):
    argv = ("verify", "classical", "--system", "kc", "--samples", "20", "--bracket-samples", "10", "--quiet")
    monkeypatch.setenv("SUPERFACTOR_SEED", "5")
    _, a, _ = run(capsys, *argv, "--seed", "1")
    _, b, _ = run(capsys, *argv, "--seed", "5")
    assert a == b and json.loads(a)["params"]["seed"] == 5
    monkeypatch.setenv("SUPERFACTOR_SEED", "x")
    assert run(capsys, *argv)[0] == 2


def test_spectrum_and_harmonics(capsys):
    code, out, _ = run(capsys, "spectrum", "kc", "--k", "2", "--nmax", "3")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["degeneracy"] for r in rows] == [1, 4, 9, 16]
    assert rows[0]["E"] == -1.0
    code, out, _ = run(capsys, "spectrum", "ho", "--omega", "0.5", "--nmax", "2")
    assert code == 0 and json.loads(out)["rows"][0]["E"] == 0.75
    code, out, _ = run(capsys, "harmonics", "--lmax", "2")
    assert code == 0 and len(json.loads(out)["pairs"]) == 9


def test_orbit_circular(capsys, tmp_path):
    path = tmp_path / "o.csv"
    code, _, _ = run(capsys, "orbit", "--system", "kc", "--k", "1", "--init", CIRCULAR, "--time", "50",
                     "--out", str(path))
    assert code == 0
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_COLUMNS
    side = json.loads((tmp_path / "o.csv.drift.json").read_text())
    assert side["drift"]["H"]["max_drift"] < 1e-9
    r = [float(row[1]) for row in rows[1:]]
    assert max(r) - min(r) < 1e-6


def test_orbit_to_stdout_puts_report_on_stderr(capsys):
    code, out, err = run(capsys, "orbit", "--system", "ho", "--init", GENERIC, "--time", "1")
    assert code == 0 and out.startswith("t,r,p_r")
    assert json.loads(err)["passed"]


def test_orbit_errors(capsys):
    assert run(capsys, "orbit", "--system", "kc", "--init", "2,1,1.5,0,0,1", "--time", "5")[0] == 1
    assert run(capsys, "orbit", "--system", "kc", "--init", "2,1,1.5,0,0,1", "--time", "5", "--allow-unbound")[0] == 0
    assert run(capsys, "orbit", "--system", "kc", "--init", "2,0,1.5", "--time", "5")[0] == 2
    assert run(capsys, "orbit", "--system", "kc", "--init", "2,0,4,0,0,1", "--time", "5")[0] == 2


def test_actions_generic_orbit(capsys, tmp_path):
    path = tmp_path / "g.csv"
    run(capsys, "orbit", "--system", "kc", "--init", GENERIC, "--time", "60", "--out", str(path))
    code, out, _ = run(capsys, "actions", "--system", "kc", "--orbit", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["undefined_angles"] == []
    fit = doc["xi_r_fit"]
    assert fit["slope"] == pytest.approx(fit["expected_slope"], rel=1e-6)


def test_actions_circular_orbit(capsys, tmp_path):
    path = tmp_path / "c.csv"
    run(capsys, "orbit", "--system", "kc", "--init", CIRCULAR, "--time", "20", "--out", str(path))
    code, out, _ = run(capsys, "actions", "--system", "kc", "--orbit", str(path))
    doc = json.loads(out)
    assert code == 0
    assert {"xi_theta", "xi_r"} <= set(doc["undefined_angles"])
    assert abs(doc["series"]["J_r"][0]) < 1e-6


def test_actions_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert run(capsys, "actions", "--system", "kc", "--orbit", str(bad))[0] == 2
    assert run(capsys, "actions", "--system", "kc", "--orbit", str(tmp_path / "missing.csv"))[0] == 2


@pytest.mark.parametrize("argv", [
    ["spectrum", "ho", "--omega", "1/2"],
    ["spectrum", "ho", "--omega", "0"],
    ["spectrum", "ho", "--omega", "nan"],
    ["spectrum", "ho", "--nmax", "-1"],
    ["spectrum", "xx"],
    ["verify"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_decimal_with_exponent_accepted(capsys):
    assert run(capsys, "spectrum", "ho", "--omega", "5e-1", "--nmax", "1")[0] == 0


def test_output_is_byte_identical_across_processes(tmp_path):
    cmd = [sys.executable, "-m", "superfactor", "verify", "classical", "--system", "kc",
           "--samples", "30", "--bracket-samples", "10", "--seed", "3", "--quiet"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
