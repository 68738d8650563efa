import json
import math

import numpy as np
import pytest

from superfactor import verify_classical as vc
from superfactor.classical import Obs, System, evaluate
from superfactor.verify import Check, VerificationReport, harmonics_report, quantum_identity_suite

KC, HO = System.kc(1), System.ho(1)


def test_check_and_report_json():
    rep = VerificationReport("demo", {"a": 1})
    rep.add(Check("ok", "g", 0.0, 1e-9))
    rep.add(Check("bad", "g", 1.0, 1e-9, note="observed"))
    rep.add(Check("nan", "g", math.nan, 1.0))
    js = rep.to_json()
    assert js["schema"] == "1" and not js["passed"] and js["n_failed"] == 2
    assert js["checks"][2]["residual"] == "nan"
    json.dumps(js)
    assert rep.lines()[0].startswith("PASS") and rep.lines()[1].startswith("FAIL")


@pytest.mark.parametrize("exact", [True, False])
def test_quantum_suite_passes(exact):
    rep = quantum_identity_suite(samples=20, seed=4, omega=0.5, k=2, exact=exact)
    assert rep.passed, [c.name for c in rep.failures]
    assert len(rep.checks) > 20
    if exact:
        assert rep.worst() == 0


def test_quantum_suite_is_seeded():
    a = quantum_identity_suite(("ho",), samples=5, seed=9).to_json()
    b = quantum_identity_suite(("ho",), samples=5, seed=9).to_json()
    assert a == b


def test_harmonics_report():
    entries, rep = harmonics_report(3)
    assert rep.passed and len(entries) == 16
    assert all(e["oracle_ratio"] is not None for e in entries)


@pytest.mark.parametrize("sys", [KC, HO], ids=["kc", "ho"])
def test_sampling_domain(sys):
    x = vc.random_points(sys, 300, np.random.default_rng(1))
    assert x.shape == (6, 300)
    assert np.all((x[0] >= 0.3) & (x[0] <= 5)) and np.all((x[2] >= 0.2) & (x[2] <= math.pi - 0.2))
    if sys.kind == "kc":
        assert np.all(np.real(evaluate(Obs.H, x, sys)) < -0.01)


@pytest.mark.parametrize("sys", [KC, HO], ids=["kc", "ho"])
def test_classical_suites_pass(sys):
    rep = vc.classical_suite(sys, samples=100, seed=2, bracket_samples=50)
    assert rep.passed, [(c.name, c.residual) for c in rep.failures]
    assert vc.anchor_suite(sys, seed=2).passed


def test_fd_step_shrinks_near_threshold():
    near = np.array([5.0, 0.4, 1.5, 0.3, 0.0, 0.3])  # H close to -0.03
    assert float(evaluate(Obs.H, near, KC)) > -0.04
    assert vc.fd_steps(KC, near) < 0.2 * vc.FD_STEP
    benign = np.array([1.0, 0.0, math.pi / 2, 0.0, 0.0, 1.0])
    assert vc.fd_steps(HO, benign) == pytest.approx(vc.FD_STEP)


def test_dynamics_suite_small():
    rep = vc.dynamics_suite(HO, orbits=2, periods=10.5, seed=1, period_orbits=2, reversal_orbits=1)
    assert rep.passed, [(c.name, c.residual) for c in rep.failures]


def test_action_angle_suite_reports_cross_brackets():
    rep = vc.action_angle_suite(KC, samples=20, seed=3, orbits=1)
    failed = {c.name for c in rep.failures}
    assert failed == {"{xi_phi, J_theta} = 0", "{xi_theta, J_r} = 0"}
    assert all("observed values" in c.note for c in rep.failures)
