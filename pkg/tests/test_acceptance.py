"""Acceptance criteria 1-10, each at its stated tolerance and sample size.

Every criterion logs one PASS/FAIL line; the lines are printed in the
"acceptance criteria" section of the pytest summary.  Criterion 9 is red: the
two carrier-phase cross brackets are nonzero constants (see README).  Its
literal form is kept as a strict xfail so the failure stays visible.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from superfactor import actionangle as aa
from superfactor import verify_classical as vc
from superfactor.classical import System
from superfactor.verify import ho_spectrum, harmonics_report, kc_spectrum, quantum_identity_suite

SYSTEMS = [System.ho(1), System.kc(1)]
CROSS = {"{xi_phi, J_theta} = 0", "{xi_theta, J_r} = 0"}


def log(criterion_log, n, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {title}  [{detail}]"
    criterion_log.append(line)
    print(line)


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def test_criterion_1_ho_spectrum(criterion_log):
    def run():
        return [r for w in (Fraction(1), Fraction(2), Fraction(1, 2)) for r in ho_spectrum(w, 6, exact=True)]

    rows, dt = timed(run)
    worst = max(r["residual"] for r in rows)
    ok = worst <= 1e-12 and dt < 5
    log(criterion_log, 1, "HO spectrum w in {1, 2, 0.5}, n <= 6", ok, f"{len(rows)} states, worst {worst:.1e}, {dt:.2f} s")
    assert ok


def test_criterion_2_kc_spectrum(criterion_log):
    def run():
        return {k: kc_spectrum(k, 5, exact=True) for k in (1, 2)}

    rows, dt = timed(run)
    worst = max(r["residual"] for rs in rows.values() for r in rs)
    exact_E = all(r["E"] == -k * k / (4 * (r["n"] + 1) ** 2) for k, rs in rows.items() for r in rs)
    deg = all(r["degeneracy"] == (r["n"] + 1) ** 2 for rs in rows.values() for r in rs)
    ok = worst <= 1e-12 and exact_E and deg and dt < 5
    log(criterion_log, 2, "KC spectrum k in {1, 2}, n <= 5, degeneracy (n+1)^2", ok,
        f"worst {worst:.1e}, degeneracy {'ok' if deg else 'wrong'}, {dt:.2f} s")
    assert ok


def test_criterion_3_operator_identities(criterion_log):
    rep, dt = timed(quantum_identity_suite, samples=24, seed=0, exact=True)
    ok = rep.passed and rep.worst() <= 1e-10 and dt < 10
    log(criterion_log, 3, "quantum operator identities (exact mode)", ok,
        f"{len(rep.checks)} identities x >= 20 functions, worst {rep.worst():.1e}, {dt:.2f} s")
    assert ok, [c.name for c in rep.failures]


def test_criterion_4_spherical_harmonics(criterion_log):
    (entries, rep), dt = timed(harmonics_report, 5, 1e-12)
    ok = rep.passed and len(entries) == 36
    log(criterion_log, 4, "Y_l^m, l <= 5, Rodrigues oracle and l(l+1)", ok, f"worst {rep.worst():.1e}, {dt:.2f} s")
    assert ok


def test_criterion_5_moduli(criterion_log):
    reps = [vc.moduli_suite(s, 500, seed=0, tol=1e-10) for s in SYSTEMS]
    worst = max(r.worst() for r in reps)
    ok = all(r.passed for r in reps)
    log(criterion_log, 5, "classical modulus table, 500 points per system", ok, f"worst {worst:.1e}")
    assert ok


def test_criterion_6_brackets(criterion_log):
    reps = [vc.bracket_suite(s, 200, seed=0, tol=1e-6) for s in SYSTEMS]
    worst = max(r.worst() for r in reps)
    ok = all(r.passed for r in reps)
    log(criterion_log, 6, "classical bracket suite (FD oracle), 200 points", ok,
        f"{sum(len(r.checks) for r in reps)} brackets, worst {worst:.1e}")
    assert ok, [(c.name, c.residual) for r in reps for c in r.failures]


@pytest.fixture(scope="module")
def dynamics():
    t0 = time.perf_counter()
    reps = {s.kind: vc.dynamics_suite(s, orbits=20, periods=10.5, seed=0, drift_tol=1e-8,
                                      period_tol=1e-6, period_orbits=5) for s in SYSTEMS}
    return reps, time.perf_counter() - t0


def test_criterion_7_conservation(criterion_log, dynamics):
    reps, dt = dynamics
    checks = [c for r in reps.values() for c in r.checks if c.name.startswith("relative drift")]
    worst = max(c.residual for c in checks)
    ok = len(checks) == 10 and all(c.passed for c in checks) and dt < 60
    log(criterion_log, 7, "H, L2, Lz, Xsym, Xanti drift, 20 orbits x 10.5 periods", ok,
        f"worst {worst:.1e}, {dt:.1f} s")
    assert ok


def test_criterion_8_frequencies(criterion_log, dynamics):
    reps, _ = dynamics
    checks = [c for r in reps.values() for c in r.checks if c.name.startswith("radial period")]
    worst = max(c.residual for c in checks)
    ok = len(checks) == 2 and all(c.passed for c in checks) and all(c.samples == 5 for c in checks)
    log(criterion_log, 8, "radial period pi/w and 2 pi k/(4(-H)^(3/2)), 5 orbits", ok, f"worst rel {worst:.1e}")
    assert ok


@pytest.fixture(scope="module")
def action_angle():
    return {s.kind: vc.action_angle_suite(s, samples=100, seed=0, tol=1e-5, orbits=5, orbit_tol=1e-6)
            for s in SYSTEMS}


def test_criterion_9_action_angle(criterion_log, action_angle):
    """Everything but the cross brackets passes; those two are the documented constants."""
    failed = {(k, c.name): c for k, r in action_angle.items() for c in r.failures}
    others = [c for r in action_angle.values() for c in r.checks if c.name not in CROSS]
    notes = "; ".join(f"{k} {name}: {c.note}" for (k, name), c in sorted(failed.items()))
    log(criterion_log, 9, "action-angle brackets and orbit behaviour", not failed,
        f"diagonal/J-J/orbit checks {'pass' if all(c.passed for c in others) else 'FAIL'}; red: {notes or 'none'}")
    assert all(c.passed for c in others), [(c.name, c.residual) for c in others if not c.passed]
    assert {name for _, name in failed} == CROSS
    # observed values: -sign(m) (KC) or -sign(m)/2 (HO), and -1
    assert "-1, +1" in failed[("kc", "{xi_phi, J_theta} = 0")].note
    assert "-0.5, +0.5" in failed[("ho", "{xi_phi, J_theta} = 0")].note
    for k in ("kc", "ho"):
        assert failed[(k, "{xi_theta, J_r} = 0")].note == "observed values {-1}"


@pytest.mark.xfail(strict=True, reason="carrier-phase angles have two nonzero cross brackets")
def test_criterion_9_cross_brackets_vanish(action_angle):
    for r in action_angle.values():
        for c in r.checks:
            if c.name in CROSS:
                assert c.passed, f"{c.name}: {c.note}"


def test_criterion_9_recombined_angles_close_the_gap():
    """Not part of the criterion: shifted angles are fully canonical at the same points."""
    from superfactor.classical import poisson_bracket_fd

    for s in SYSTEMS:
        x = vc.nondegenerate_points(s, 100, np.random.default_rng(0))
        E, J = aa.recombined_angle_functions(s), aa.action_functions(s)
        for i, en in enumerate(E):
            for j, jn in enumerate(J):
                b = poisson_bracket_fd(E[en], J[jn], x, 1e-4, f_angle=True)
                assert np.max(np.abs(b - (i == j))) < 1e-5


def test_criterion_10_degenerate_anchors(criterion_log):
    reps = [vc.anchor_suite(s, seed=0, tol=1e-12) for s in SYSTEMS]
    worst = max(r.worst() for r in reps)
    ok = all(r.passed for r in reps)
    log(criterion_log, 10, "J_r = 0 circular, J_theta = 0 equatorial", ok, f"worst {worst:.1e}")
    assert ok
