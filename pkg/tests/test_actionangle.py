import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from superfactor import actionangle as aa
from superfactor.classical import DomainError, Obs, PhasePoint, System, evaluate, poisson_bracket_fd
from superfactor.dynamics import hamilton_flow, radial_period
from superfactor.verify_classical import circular_point, equatorial_point, nondegenerate_points

SYSTEMS = {"kc": System.kc(1), "ho": System.ho(1), "kc2": System.kc(2), "ho2": System.ho(0.5)}
H_FD = 1e-4


def points(sys, n=15, seed=11):
    return nondegenerate_points(sys, n, np.random.default_rng(seed))


def bracket(f, g, x, f_angle=True):
    return poisson_bracket_fd(f, g, x, H_FD, f_angle=f_angle)


def test_phase_of_examples():
    assert aa.phase_of(1 + 0j) == 0
    assert aa.phase_of(1j) == pytest.approx(math.pi / 2)
    assert aa.phase_of(-1 + 0j) == pytest.approx(math.pi)
    v = complex(evaluate(Obs.SIGMA_TH_P, PhasePoint(1, 0, math.pi / 2, 0.4, 0, 1), System.kc(1)))
    assert aa.phase_of(v) == pytest.approx(math.pi / 2)
    with pytest.raises(aa.DegenerateOrbitError):
        aa.phase_of(1e-13 + 0j, "A+")


def test_safe_arccos():
    assert aa.safe_arccos(1 + 5e-13) == 0.0
    assert aa.safe_arccos(-1.0) == pytest.approx(math.pi)
    with pytest.raises(DomainError):
        aa.safe_arccos(1 + 1e-9)
    with pytest.raises(DomainError):
        aa.safe_arccos(float("nan"))


def test_unwrap():
    c = np.full(5, 0.7)
    np.testing.assert_array_equal(aa.unwrap_along(c), c)
    wrapped = np.angle(np.exp(1j * np.linspace(0, 20, 200)))
    np.testing.assert_allclose(aa.unwrap_along(wrapped), np.linspace(0, 20, 200), atol=1e-12)
    with pytest.raises(aa.SamplingTooCoarseError):
        aa.unwrap_along(np.angle(np.exp(1j * np.linspace(0, 20, 8))))


def test_kc_anchor_examples():
    sys = SYSTEMS["kc"]
    assert aa.actions(circular_point(sys, 1.0, 1.0), sys)[2] == 0
    J = aa.actions(equatorial_point(sys, 1.5, 0.1, 0.8), sys)
    assert J[1] == 0 and J[0] == 0.8
    assert aa.actions(PhasePoint(1.2, 0.1, 1.0, 0.3, 0.0, -0.4), sys)[0] == -0.4


def test_ho_anchor_examples():
    sys = SYSTEMS["ho"]
    pt = circular_point(sys, 1.0, 1.0)
    assert (pt.r, float(evaluate(Obs.H, pt, sys))) == pytest.approx((math.sqrt(2), 1.0))
    assert aa.actions(pt, sys)[2] == pytest.approx(0, abs=1e-15)
    assert aa.actions(equatorial_point(sys, 1.5, 0.3, -0.8), sys)[1] == 0
    with pytest.raises(aa.DegenerateOrbitError):
        aa.action_angles(pt, sys)  # E = w ell: the radial carriers vanish


def test_action_angle_set_for_generic_point():
    pt = PhasePoint(1.3, 0.2, 1.0, 0.3, 0.4, 0.5)
    s = aa.actions_kc(pt, 1.0)
    assert s.J_phi == 0.5
    assert s.J_theta > 0 and s.J_r > 0
    assert all(-math.pi < v <= math.pi for v in (s.xi_phi, s.xi_theta, s.xi_r))
    assert set(aa.actions_ho(pt).to_json()) == {"J_phi", "J_theta", "J_r", "xi_phi", "xi_theta", "xi_r"}


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_actions_nonnegative_on_bound_points(name):
    sys = SYSTEMS[name]
    x = points(sys, 50)
    _, jt, jr = aa._actions_vec(x, sys)
    assert np.all(jt >= 0) and np.all(jr >= 0)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_diagonal_brackets(name):
    sys = SYSTEMS[name]
    x = points(sys)
    X, J = aa.angle_functions(sys), aa.action_functions(sys)
    for xn, jn in (("xi_phi", "J_phi"), ("xi_theta", "J_theta"), ("xi_r", "J_r")):
        np.testing.assert_allclose(bracket(X[xn], J[jn], x), 1, atol=1e-5)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_action_brackets_vanish(name):
    sys = SYSTEMS[name]
    x = points(sys)
    J = aa.action_functions(sys)
    for a, b in (("J_phi", "J_theta"), ("J_phi", "J_r"), ("J_theta", "J_r")):
        np.testing.assert_allclose(bracket(J[a], J[b], x, f_angle=False), 0, atol=1e-5)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_carrier_phase_cross_brackets(name):
    """Two cross brackets of the carrier phases are nonzero constants; the rest vanish."""
    sys = SYSTEMS[name]
    x = points(sys)
    X, J = aa.angle_functions(sys), aa.action_functions(sys)
    c = 1.0 if sys.kind == "kc" else 0.5
    np.testing.assert_allclose(bracket(X["xi_phi"], J["J_theta"], x), -c * np.sign(x[5]), atol=1e-5)
    np.testing.assert_allclose(bracket(X["xi_theta"], J["J_r"], x), -1, atol=1e-5)
    for xn, jn in (("xi_phi", "J_r"), ("xi_theta", "J_phi"), ("xi_r", "J_phi"), ("xi_r", "J_theta")):
        np.testing.assert_allclose(bracket(X[xn], J[jn], x), 0, atol=1e-5)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_recombined_angles_are_canonical(name):
    sys = SYSTEMS[name]
    x = points(sys)
    E, J = aa.recombined_angle_functions(sys), aa.action_functions(sys)
    for i, en in enumerate(("eta_phi", "eta_theta", "eta_r")):
        for j, jn in enumerate(("J_phi", "J_theta", "J_r")):
            np.testing.assert_allclose(bracket(E[en], J[jn], x), float(i == j), atol=1e-5)
    for a, b in (("eta_phi", "eta_theta"), ("eta_phi", "eta_r"), ("eta_theta", "eta_r")):
        val = poisson_bracket_fd(E[a], E[b], x, H_FD, f_angle=True, g_angle=True)
        np.testing.assert_allclose(val, 0, atol=1e-5)


@pytest.mark.parametrize("scale", [2.0, 2 * math.pi])
def test_convention_rescaling_preserves_brackets(scale):
    sys = SYSTEMS["kc"]
    x = points(sys, 10)
    X, J = aa.angle_functions(sys), aa.action_functions(sys)
    raw = bracket(X["xi_r"], J["J_r"], x)
    scaled = bracket(lambda y: X["xi_r"](y) / scale, lambda y: scale * J["J_r"](y), x, f_angle=False)
    np.testing.assert_allclose(scaled, raw, rtol=1e-9)


@pytest.mark.parametrize("name", ["kc", "ho"])
def test_frequency_equals_dH_dJr(name):
    """dH/dJ_r across neighbouring orbits (fixed L^2, L_z) equals the measured radial frequency."""
    sys = SYSTEMS[name]
    base = PhasePoint(1.4, 0.15, 1.1, 0.3, 0.0, 0.5)
    d = 2e-3
    pts = [PhasePoint(1.4, v, 1.1, 0.3, 0.0, 0.5) for v in (0.15 - d, 0.15 + d)]
    Hs = [float(evaluate(Obs.H, p, sys)) for p in pts]
    Js = [aa.actions(p, sys)[2] for p in pts]
    dHdJ = (Hs[1] - Hs[0]) / (Js[1] - Js[0])
    H0 = float(evaluate(Obs.H, base, sys))
    T = 2 * math.pi / sys.radial_frequency(H0)
    measured = 2 * math.pi / radial_period(hamilton_flow(base, sys, 4.5 * T))
    assert dHdJ == pytest.approx(measured, rel=1e-4)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_angles_along_orbit(name):
    sys = SYSTEMS[name]
    pt = PhasePoint(1.4, 0.15, 1.1, 0.3, 0.2, 0.5)
    H = float(evaluate(Obs.H, pt, sys))
    tr = hamilton_flow(pt, sys, 3 * 2 * math.pi / sys.radial_frequency(H))
    s = aa.angle_series(tr.states(), sys)
    assert s["degenerate"] == []
    for key in ("J_phi", "J_theta", "J_r", "xi_phi", "xi_theta"):
        assert np.ptp(s[key]) < 1e-6
    fit = aa.fit_line(tr.t, s["xi_r"])
    assert fit["max_residual"] < 1e-6
    assert fit["slope"] == pytest.approx(aa.slope_expected(sys, H), rel=1e-6)


def test_angle_series_on_degenerate_orbit():
    sys = SYSTEMS["kc"]
    tr = hamilton_flow(circular_point(sys, 1.0, 1.0), sys, 10.0)
    with pytest.raises(aa.DegenerateOrbitError):
        aa.angle_series(tr.states(), sys)
    s = aa.angle_series(tr.states(), sys, strict=False)
    assert set(s["degenerate"]) >= {"xi_theta", "xi_r"}
    assert s["xi_theta"] is None


@pytest.mark.parametrize("name", ["kc", "ho", "kc2"])
def test_closed_form_phase_ratios(name):
    sys = SYSTEMS[name]
    for col in points(sys, 20).T:
        for key, (carrier, closed) in aa.table_phase_ratios(col, sys).items():
            assert abs(abs(carrier) - abs(closed)) < 1e-10, key
        for v in aa.arccos_phases(col, sys).values():
            assert 0 <= v <= math.pi


@given(st.floats(0.2, 2.0), st.floats(-0.95, 0.95), st.floats(0.3, 1.5), st.sampled_from(["kc", "ho"]))
def test_circular_orbits_have_zero_radial_action(ell, frac, theta, kind):
    sys = System(kind, 1.3)
    m = frac * ell * math.sin(theta)
    assert abs(aa.actions(circular_point(sys, ell, m, theta), sys)[2]) < 1e-12
