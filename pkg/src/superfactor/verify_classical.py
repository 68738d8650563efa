"""Classical suites: modulus identities, Poisson brackets, conservation along
orbits, radial periods, and the action-angle checks."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from . import actionangle as aa
from .classical import (
    Obs,
    PhasePoint,
    System,
    closure,
    evaluate,
    frozen_at,
    gradient_fd,
    poisson_bracket_fd,
)
from .dynamics import (
    IntegratorControls,
    classify_orbit,
    drift_report,
    hamilton_flow,
    radial_period,
    turning_radii,
)
from .symbolic import analytic_gradient
from .verify import Check, VerificationReport

__all__ = [
    "random_points",
    "random_orbit_start",
    "nondegenerate_points",
    "circular_point",
    "equatorial_point",
    "moduli_suite",
    "bracket_suite",
    "gradient_suite",
    "dynamics_suite",
    "action_angle_suite",
    "classical_suite",
]

FD_STEP = 1e-3


# --------------------------------------------------------------------------- sampling


def random_points(sys: System, n: int, rng: np.random.Generator) -> np.ndarray:
    """``(6, n)`` points with theta in [0.2, pi-0.2], r in [0.3, 5]; Kepler points bound (H < -0.01)."""
    out = []
    while len(out) < n:
        m = 4 * (n - len(out)) + 16
        scale = 0.6 if sys.kind == "kc" else 1.5
        x = np.array([
            rng.uniform(0.3, 5.0, m),
            rng.normal(0, scale, m),
            rng.uniform(0.2, math.pi - 0.2, m),
            rng.normal(0, scale, m),
            rng.uniform(0, 2 * math.pi, m),
            rng.normal(0, scale, m),
        ])
        if sys.kind == "kc":
            x = x[:, np.real(evaluate(Obs.H, x, sys)) < -0.01]
        out.extend(x.T.tolist())
    return np.array(out[:n]).T


def nondegenerate_points(sys: System, n: int, rng: np.random.Generator, floor: float = 1e-2) -> np.ndarray:
    """Random points away from every phase singularity of the action-angle carriers,
    and with ``|p_phi|`` away from 0 where ``|m|`` has its kink."""
    out = []
    while len(out) < n:
        x = random_points(sys, 2 * (n - len(out)) + 8, rng)
        L2 = np.real(evaluate(Obs.L2, x, sys))
        ok = (np.abs(x[5]) > 0.05) & (np.abs(x[5]) < 0.95 * np.sqrt(L2))
        for obs in (Obs.A_P, Obs.SIGMA_R_P, Obs.LAMBDA_TH_P, Obs.LAMBDA_R_P):
            ok &= np.abs(evaluate(obs, x, sys)) > floor
        out.extend(x[:, ok].T.tolist())
    return np.array(out[:n]).T


def random_orbit_start(sys: System, rng: np.random.Generator) -> PhasePoint:
    """Bound initial condition for long runs (Kepler: pericentre >= 0.3, orbit not polar)."""
    while True:
        x = np.array([
            rng.uniform(0.5, 4.0), rng.normal(0, 0.5), rng.uniform(0.3, math.pi - 0.3),
            rng.normal(0, 0.7), rng.uniform(0, 2 * math.pi), rng.normal(0, 0.7),
        ])
        if sys.kind == "ho":
            x[[1, 3, 5]] *= 1.5
            x[0] = rng.uniform(0.5, 3.0)
        pt = PhasePoint.from_array(x)
        H = float(evaluate(Obs.H, pt, sys))
        L2 = float(evaluate(Obs.L2, pt, sys))
        if abs(x[5]) < 0.2 * math.sqrt(L2):
            continue
        if sys.kind == "ho":
            return pt
        if -0.3 <= H <= -0.06 and turning_radii(H, L2, sys)[0] >= 0.3:
            return pt


def circular_point(sys: System, ell: float, m: float, theta: float = math.pi / 2, phi: float = 0.0) -> PhasePoint:
    """Point on the circular orbit with ``L^2 = ell^2`` and ``L_z = m``."""
    pth2 = ell * ell - m * m / math.sin(theta) ** 2
    if pth2 < 0:
        raise ValueError("|m| / sin(theta) exceeds ell")
    r = 2 * ell * ell / sys.param if sys.kind == "kc" else math.sqrt(2 * ell / sys.param)
    return PhasePoint(r, 0.0, theta, math.sqrt(pth2), phi, m)


def equatorial_point(sys: System, r: float, pr: float, m: float, phi: float = 0.0) -> PhasePoint:
    return PhasePoint(r, pr, math.pi / 2, 0.0, phi, m)


# --------------------------------------------------------------------------- helpers


def _rel(lhs, rhs, scale) -> float:
    return float(np.max(np.abs(lhs - rhs) / np.maximum(scale, 1e-300)))


def fd_steps(sys: System, x, h: float = FD_STEP) -> np.ndarray:
    """Per-point difference step, shrunk with the local length scales: ``r``
    near the centre, ``sin(theta)`` near the axis, ``sqrt(L^2)`` where the
    angular momentum vanishes and, for Kepler functions of ``sqrt(-H)``, the
    distance ``|H| / |grad H|`` to the ionisation threshold."""
    x = np.asarray(x, dtype=float)
    L2 = np.real(evaluate(Obs.L2, x, sys))
    scale = np.minimum.reduce([np.ones(x.shape[1:]), x[0], np.abs(np.sin(x[2])), np.sqrt(L2)])
    if sys.kind == "kc":
        H = np.real(evaluate(Obs.H, x, sys))
        gH = gradient_fd(closure(Obs.H, sys), x, h * scale)
        reach = np.abs(H) / np.maximum(0.3, np.max(np.abs(gH), axis=0))
        scale = np.minimum(scale, reach)
    return h * scale


def _pb(f: Obs, g: Obs, x, sys, frozen, h):
    """Bracket and the magnitude of its largest terms, ``sum |df/dq dg/dp| + |df/dp dg/dq|``."""
    gf = gradient_fd(closure(f, sys, frozen), x, h)
    gg = gradient_fd(closure(g, sys, frozen), x, h)
    val = sum(gf[2 * i] * gg[2 * i + 1] - gf[2 * i + 1] * gg[2 * i] for i in range(3))
    size = sum(np.abs(gf[2 * i] * gg[2 * i + 1]) + np.abs(gf[2 * i + 1] * gg[2 * i]) for i in range(3))
    return val, size


# --------------------------------------------------------------------------- moduli


def moduli_suite(sys: System, samples: int = 500, seed: int = 0, tol: float = 1e-10) -> VerificationReport:
    """``|f|^2`` against the tabulated expression in (E, ell^2, m^2) at random points."""
    rng = np.random.default_rng(seed)
    x = random_points(sys, samples, rng)
    rep = VerificationReport("moduli", {"system": sys.kind, "param": sys.param, "samples": samples, "seed": seed})
    H = np.real(evaluate(Obs.H, x, sys))
    L2 = np.real(evaluate(Obs.L2, x, sys))
    m2 = x[5] ** 2
    ell = np.sqrt(L2)

    def row(name, obs, expr, scale):
        v = np.abs(evaluate(obs, x, sys)) ** 2
        rep.add(Check(name, "moduli", _rel(v, expr, scale), tol, samples))

    row("|A+|^2 = l^2 - m^2", Obs.A_P, L2 - m2, L2 + m2)
    row("|A-|^2 = l^2 - m^2", Obs.A_M, L2 - m2, L2 + m2)
    row("|lambda+_theta|^2 = l^2 - m^2", Obs.LAMBDA_TH_P, L2 - m2, L2 + m2)
    row("sigma+_theta sigma-_theta = L2_m - m^2", Obs.SIGMA_TH_P, L2 - m2, L2 + m2)
    if sys.kind == "ho":
        w = sys.param
        row("|a+|^2 = E + w l", Obs.A_HO_P, H + w * ell, np.abs(H) + w * ell)
        row("|b+|^2 = E - w l", Obs.B_HO_P, H - w * ell, np.abs(H) + w * ell)
        row("|lambda+_r|^2 = E^2 - w^2 l^2", Obs.LAMBDA_R_P, H * H - w * w * L2, H * H + w * w * L2)
    else:
        k = sys.param
        row("|sigma+_r|^2 = E + k^2/(4 l^2)", Obs.SIGMA_R_P, H + k * k / (4 * L2), np.abs(H) + k * k / (4 * L2))
        row("|lambda+_r|^2 = k^2/(-4E) - l^2", Obs.LAMBDA_R_P, k * k / (-4 * H) - L2, k * k / (-4 * H) + L2)
    # product and conjugation structure
    a = evaluate(Obs.A_P, x, sys)
    rep.add(Check("A+ = sigma+_theta l+_phi (m = p_phi)", "moduli",
                  _rel(a, evaluate(Obs.SIGMA_TH_P, x, sys) * evaluate(Obs.LPHI_P, x, sys), np.sqrt(L2)), tol, samples))
    rep.add(Check("A- = conj(A+)", "moduli", _rel(evaluate(Obs.A_M, x, sys), np.conj(a), np.sqrt(L2)), tol, samples))
    if sys.kind == "ho":
        ab = evaluate(Obs.B_HO_P, x, sys) * evaluate(Obs.A_HO_P, x, sys)
        rep.add(Check("sigma+_r = b+ a+", "moduli", _rel(evaluate(Obs.SIGMA_R_P, x, sys), ab, np.abs(H) + L2 / 0.09), tol, samples))
        a_ = evaluate(Obs.A_HO_P, x, sys)
        rep.add(Check("H = a+ a- - w l", "moduli",
                      _rel(np.real(a_ * np.conj(a_)) - sys.param * ell, H, np.abs(H) + sys.param * ell), tol, samples))
    else:
        c = x[0] ** -1
        xs = np.cos(x[2]) * (L2 * c - sys.param / 2) + x[3] * x[1] * np.sin(x[2])
        rep.add(Check("X_sym = cos(theta)(l^2/r - k/2) + p_theta p_r sin(theta)", "moduli",
                      _rel(np.real(evaluate(Obs.X_SYM, x, sys)), xs, np.abs(xs) + sys.param), tol, samples))
    return rep


# --------------------------------------------------------------------------- brackets


def _bracket_rows(sys: System):
    """``(name, f, g, rhs(x, ell, m, H))``; constants frozen at the point."""
    I = 1j
    rows = []
    for s, lp, sth, A, lth, sr, lr, S in (
        (+1, Obs.LPHI_P, Obs.SIGMA_TH_P, Obs.A_P, Obs.LAMBDA_TH_P, Obs.SIGMA_R_P, Obs.LAMBDA_R_P, Obs.S_P),
        (-1, Obs.LPHI_M, Obs.SIGMA_TH_M, Obs.A_M, Obs.LAMBDA_TH_M, Obs.SIGMA_R_M, Obs.LAMBDA_R_M, Obs.S_M),
    ):
        sg = "+" if s > 0 else "-"
        mp = "-+"[s > 0] if False else ("-" if s > 0 else "+")  # the mirrored sign
        rows += [
            (f"{{L_z, l{sg}_phi}} = {mp}i l{sg}_phi", Obs.LZ, lp, lambda x, l, m, H, v, s=s: -s * I * v),
            (f"{{L^2, l{sg}_phi}} = {mp}i (2m/sin^2) l{sg}_phi", Obs.L2, lp,
             lambda x, l, m, H, v, s=s: -s * I * 2 * m / np.sin(x[2]) ** 2 * v),
            (f"{{L^2, sigma{sg}_theta}} = {sg}i (2m/sin^2) sigma{sg}_theta", Obs.L2, sth,
             lambda x, l, m, H, v, s=s: s * I * 2 * m / np.sin(x[2]) ** 2 * v),
            (f"{{L^2, A{sg}}} = 0", Obs.L2, A, lambda x, l, m, H, v: 0 * v),
            (f"{{H, A{sg}}} = 0", Obs.H, A, lambda x, l, m, H, v: 0 * v),
            (f"{{L_z, A{sg}}} = {mp}i A{sg}", Obs.LZ, A, lambda x, l, m, H, v, s=s: -s * I * v),
            (f"{{L^2, lambda{sg}_theta}} = {mp}2i l lambda{sg}_theta", Obs.L2, lth,
             lambda x, l, m, H, v, s=s: -s * 2 * I * l * v),
            (f"{{sqrt(L^2), lambda{sg}_theta}} = {mp}i lambda{sg}_theta", Obs.SQRT_L2, lth,
             lambda x, l, m, H, v, s=s: -s * I * v),
            (f"{{H, S{sg}}} = 0", Obs.H, S, lambda x, l, m, H, v: 0 * v),
        ]
        if sys.kind == "ho":
            w = sys.param
            rows += [
                (f"{{H, sigma{sg}_r}} = {sg}i (4l/r^2) sigma{sg}_r", Obs.H, sr,
                 lambda x, l, m, H, v, s=s: s * I * 4 * l / x[0] ** 2 * v),
                (f"{{H, lambda{sg}_r}} = {mp}2i w lambda{sg}_r", Obs.H, lr,
                 lambda x, l, m, H, v, s=s: -s * 2 * I * w * v),
                (f"{{sqrt(L^2), S{sg}}} = {mp}2i S{sg}", Obs.SQRT_L2, S, lambda x, l, m, H, v, s=s: -s * 2 * I * v),
            ]
        else:
            k = sys.param
            rows += [
                (f"{{H, sigma{sg}_r}} = {sg}i (2l/r^2) sigma{sg}_r", Obs.H, sr,
                 lambda x, l, m, H, v, s=s: s * I * 2 * l / x[0] ** 2 * v),
                (f"{{H, lambda{sg}_r}} = {mp}i alpha(H) lambda{sg}_r", Obs.H, lr,
                 lambda x, l, m, H, v, s=s: -s * I * 4 * (-H) ** 1.5 / k * v),
                (f"{{sqrt(L^2), S{sg}}} = {mp}i S{sg}", Obs.SQRT_L2, S, lambda x, l, m, H, v, s=s: -s * I * v),
            ]
    if sys.kind == "kc":
        k = sys.param
        rows.append(("{lambda+_r, lambda-_r} = i k / sqrt(-H)", Obs.LAMBDA_R_P, Obs.LAMBDA_R_M,
                     lambda x, l, m, H, v: I * k / np.sqrt(-H) + 0 * v))
    rows += [
        ("{H, X_sym} = 0", Obs.H, Obs.X_SYM, lambda x, l, m, H, v: 0 * v),
        ("{H, X_anti} = 0", Obs.H, Obs.X_ANTI, lambda x, l, m, H, v: 0 * v),
    ]
    return rows


def _commutes_with_H(name: str) -> bool:
    return name.startswith(("{H, S", "{H, X"))


def bracket_suite(
    sys: System, samples: int = 200, seed: int = 0, tol: float = 1e-6, h: float = FD_STEP,
    constant_tol: float = 1e-8,
) -> VerificationReport:
    """Poisson-bracket identities through the finite-difference oracle.

    Residual: ``|{f,g} - rhs| / max(1, |rhs|, term size)``, worst over the sample
    points, where the term size is the sum of the moduli of the six products in
    the bracket.  A zero bracket of large functions is judged against the size of
    the terms that cancel.  ``{H, S+-}`` and ``{H, X}`` use ``constant_tol``.
    """
    rng = np.random.default_rng(seed)
    x = random_points(sys, samples, rng)
    frozen = frozen_at(x)
    ell, m = frozen
    H = np.real(evaluate(Obs.H, x, sys))
    rep = VerificationReport("brackets", {"system": sys.kind, "param": sys.param, "samples": samples,
                                          "seed": seed, "fd_step": h})
    steps = fd_steps(sys, x, h)
    for name, f, g, rhs in _bracket_rows(sys):
        lhs, size = _pb(f, g, x, sys, frozen, steps)
        want = rhs(x, ell, m, H, evaluate(g, x, sys, frozen))
        res = float(np.max(np.abs(lhs - want) / np.maximum(np.maximum(1.0, np.abs(want)), size)))
        rep.add(Check(name, "brackets", res, constant_tol if _commutes_with_H(name) else tol, samples))
    return rep


def gradient_suite(sys: System, samples: int = 1000, seed: int = 0, tol: float = 1e-7, h: float = FD_STEP) -> VerificationReport:
    """Symbolic gradients of every catalog function against finite differences."""
    rng = np.random.default_rng(seed)
    x = random_points(sys, samples, rng)
    frozen = frozen_at(x)
    steps = fd_steps(sys, x, h)
    rep = VerificationReport("gradients", {"system": sys.kind, "samples": samples, "seed": seed})
    worst, worst_name = 0.0, ""
    for obs in Obs:
        try:
            evaluate(obs, x[:, :1], sys)
        except Exception:
            continue  # not defined for this system
        ga = analytic_gradient(obs, x, sys, frozen)
        gf = gradient_fd(closure(obs, sys, frozen), x, steps)
        res = float(np.max(np.abs(ga - gf) / np.maximum(1.0, np.abs(ga))))
        if res > worst:
            worst, worst_name = res, obs.value
    rep.add(Check("analytic gradient = finite-difference gradient (all observables)", "gradients",
                  worst, tol, samples, note=f"worst: {worst_name}" if worst_name else ""))
    return rep


# --------------------------------------------------------------------------- dynamics


def _radial_T(sys: System, H: float) -> float:
    return 2 * math.pi / sys.radial_frequency(H)


def dynamics_suite(
    sys: System,
    orbits: int = 20,
    periods: float = 10.5,
    seed: int = 0,
    drift_tol: float = 1e-8,
    period_tol: float = 1e-6,
    period_orbits: int = 5,
    reversal_orbits: int = 3,
    ctrl: Optional[IntegratorControls] = None,
) -> VerificationReport:
    """Conservation of all five constants, radial periods, closure and time reversal."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport("dynamics", {"system": sys.kind, "param": sys.param, "orbits": orbits,
                                          "periods": periods, "seed": seed})
    worst = {}
    per_err, rev_err = 0.0, 0.0
    not_closed = 0
    for i in range(orbits):
        pt = random_orbit_start(sys, rng)
        H = float(evaluate(Obs.H, pt, sys))
        T = periods * _radial_T(sys, H)
        tr = hamilton_flow(pt, sys, T, ctrl)
        d = drift_report(tr)
        for key, v in d.max_drift.items():
            worst[key] = max(worst.get(key, 0.0), v)
        if i < period_orbits:
            per_err = max(per_err, abs(radial_period(tr) / _radial_T(sys, H) - 1))
            if classify_orbit(tr).kind != "closed":
                not_closed += 1
        if i < reversal_orbits:
            back = hamilton_flow(PhasePoint.from_array(tr.y[-1]), sys, -T, ctrl)
            rev_err = max(rev_err, float(np.max(np.abs(back.y[0] - pt.to_array()))))
    for key in sorted(worst):
        rep.add(Check(f"relative drift of {key} over {periods:g} radial periods", "dynamics",
                      worst[key], drift_tol, orbits))
    expected = "pi/w" if sys.kind == "ho" else "2 pi k / (4 (-H)^(3/2))"
    rep.add(Check(f"radial period = {expected} (relative error)", "dynamics", per_err, period_tol, period_orbits))
    rep.add(Check("bound orbits classified closed (count of failures)", "dynamics", float(not_closed), 0.0, period_orbits))
    rep.add(Check("forward T then backward T returns the start", "dynamics", rev_err, 1e-8, reversal_orbits))
    return rep


# --------------------------------------------------------------------------- action-angle


def _values_note(b) -> str:
    vals = np.unique(np.round(np.real(b), 6))
    shown = ", ".join(f"{v:+g}" for v in vals[:6])
    return f"observed values {{{shown}}}"


_PAIRS = [("xi_phi", "J_phi"), ("xi_theta", "J_theta"), ("xi_r", "J_r")]


def action_angle_suite(
    sys: System,
    samples: int = 100,
    seed: int = 0,
    tol: float = 1e-5,
    orbits: int = 3,
    orbit_tol: float = 1e-6,
    h: float = 1e-4,
) -> VerificationReport:
    """Canonical brackets of (J, xi), constancy of xi_phi, xi_theta and J along orbits,
    the linear growth of xi_r, and the closed-form phase ratios."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport("action-angle", {"system": sys.kind, "param": sys.param,
                                              "samples": samples, "seed": seed, "orbits": orbits})
    x = nondegenerate_points(sys, samples, rng)
    X = aa.angle_functions(sys)
    J = aa.action_functions(sys)
    for xn, xf in X.items():
        for jn, jf in J.items():
            want = 1.0 if (xn, jn) in _PAIRS else 0.0
            b = poisson_bracket_fd(xf, jf, x, h, f_angle=True)
            res = float(np.max(np.abs(b - want)))
            rep.add(Check(f"{{{xn}, {jn}}} = {want:g}", "aa-bracket", res, tol, samples,
                          note=_values_note(b) if res > tol else ""))
    names = list(J)
    for i in range(3):
        for j in range(i + 1, 3):
            b = poisson_bracket_fd(J[names[i]], J[names[j]], x, h)
            rep.add(Check(f"{{{names[i]}, {names[j]}}} = 0", "aa-bracket", float(np.max(np.abs(b))), tol, samples))

    # along orbits
    const = {k: 0.0 for k in ("J_phi", "J_theta", "J_r", "xi_phi", "xi_theta")}
    resid, slope_err = 0.0, 0.0
    done = 0
    while done < orbits:
        pt = random_orbit_start(sys, rng)
        try:
            aa.action_angles(pt, sys)
        except aa.DegenerateOrbitError:
            continue
        H = float(evaluate(Obs.H, pt, sys))
        tr = hamilton_flow(pt, sys, 3 * _radial_T(sys, H))
        series = aa.angle_series(tr.states(), sys)
        for key in const:
            const[key] = max(const[key], float(np.ptp(series[key])))
        fit = aa.fit_line(tr.t, series["xi_r"])
        resid = max(resid, fit["max_residual"])
        slope_err = max(slope_err, abs(fit["slope"] / sys.radial_frequency(H) - 1))
        done += 1
    for key, v in const.items():
        rep.add(Check(f"{key} constant along orbits (peak-to-peak)", "aa-orbit", v, orbit_tol, orbits))
    rate = "2w" if sys.kind == "ho" else "alpha(H)"
    rep.add(Check("xi_r linear in t (max deviation from fitted line)", "aa-orbit", resid, orbit_tol, orbits))
    rep.add(Check(f"xi_r slope = {rate} (relative error)", "aa-orbit", slope_err, orbit_tol, orbits))

    # closed-form phase ratios, branch-free comparison of |cos(phase)|
    worst = {}
    for col in x.T[: min(samples, 50)]:
        for key, (c, f) in aa.table_phase_ratios(col, sys).items():
            worst[key] = max(worst.get(key, 0.0), abs(abs(c) - abs(f)))
    for key, v in worst.items():
        rep.add(Check(f"arccos form of the {key} phase agrees up to branch", "aa-phase", v, 1e-10, min(samples, 50)))
    return rep


def anchor_suite(sys: System, seed: int = 0, tol: float = 1e-12, samples: int = 20) -> VerificationReport:
    """J_r = 0 on constructed circular orbits, J_theta = 0 on equatorial orbits."""
    rng = np.random.default_rng(seed)
    rep = VerificationReport("anchors", {"system": sys.kind, "param": sys.param, "samples": samples})
    jr, jt = 0.0, 0.0
    for _ in range(samples):
        ell = rng.uniform(0.3, 2.0)
        m = rng.uniform(-0.9, 0.9) * ell
        theta = rng.uniform(math.asin(min(1.0, abs(m) / ell)) + 1e-3, math.pi / 2)
        pt = circular_point(sys, ell, m, theta, rng.uniform(0, 2 * math.pi))
        jr = max(jr, abs(aa.actions(pt, sys)[2]))
        eq = equatorial_point(sys, rng.uniform(0.5, 3.0), rng.normal(0, 0.2), rng.uniform(0.2, 1.5) * rng.choice([-1, 1]))
        if sys.kind == "kc" and float(evaluate(Obs.H, eq, sys)) >= 0:
            eq = equatorial_point(sys, eq.r, 0.0, 0.5 * math.sqrt(sys.param * eq.r))
        jt = max(jt, abs(aa.actions(eq, sys)[1]))
    rep.add(Check("J_r = 0 on circular orbits", "anchors", jr, tol, samples))
    rep.add(Check("J_theta = 0 on equatorial orbits", "anchors", jt, tol, samples))
    return rep


def classical_suite(sys: System, samples: int = 500, seed: int = 0, bracket_samples: int = 200) -> VerificationReport:
    """Moduli, brackets and gradients (no orbit integration)."""
    rep = VerificationReport("classical", {"system": sys.kind, "param": sys.param, "samples": samples, "seed": seed})
    rep.extend(moduli_suite(sys, samples, seed))
    rep.extend(bracket_suite(sys, bracket_samples, seed))
    rep.extend(gradient_suite(sys, max(samples, 1), seed))
    return rep
