"""Hamiltonian flow of the central-force problems, conservation monitoring,
radial periods and orbit classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import kernel
from .classical import Obs, PhasePoint, System, evaluate

__all__ = [
    "IntegratorControls",
    "Trajectory",
    "DriftReport",
    "OrbitClass",
    "IntegrationError",
    "InsufficientDataError",
    "hamilton_flow",
    "drift_report",
    "radial_period",
    "turning_points",
    "classify_orbit",
    "default_step",
    "turning_radii",
    "CONSERVED",
]

CONSERVED = (Obs.H, Obs.L2, Obs.LZ, Obs.X_SYM, Obs.X_ANTI)

#: cap on stored samples; longer runs record every k-th step
MAX_SAMPLES = 400_000


class IntegrationError(RuntimeError):
    """Integration aborted (coordinate singularity, no convergence, drift not met)."""


class InsufficientDataError(ValueError):
    """Trajectory too short or featureless for the requested measurement."""


@dataclass(frozen=True)
class IntegratorControls:
    dt: Optional[float] = None
    tolerance: float = 1e-9
    max_halvings: int = 6
    allow_unbound: bool = False
    steps_per_radian: float = 16.0


@dataclass
class Trajectory:
    """Samples ``y[i]`` at times ``t[i]`` in internal coordinates.

    Internally phi is not wrapped.  In line mode (oscillator with zero angular
    momentum) ``y[:, 0]`` is a signed coordinate along the line of motion;
    :meth:`states` maps it back to spherical coordinates.
    """

    t: np.ndarray
    y: np.ndarray
    system: System
    line: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.t) > 1 and not np.all(np.diff(self.t) > 0):
            raise ValueError("sample times must be strictly increasing")

    def states(self) -> np.ndarray:
        """Spherical phase points, shape (N, 6), phi unwrapped."""
        if not self.line:
            return self.y
        out = self.y.copy()
        neg = out[:, 0] < 0
        out[neg, 0] = -out[neg, 0]
        out[neg, 1] = -out[neg, 1]
        out[neg, 2] = math.pi - out[neg, 2]
        out[neg, 4] = out[neg, 4] + math.pi
        return out

    def exported(self) -> np.ndarray:
        """Like :meth:`states` with phi wrapped into [0, 2 pi)."""
        out = self.states().copy()
        out[:, 4] = np.mod(out[:, 4], 2 * math.pi)
        return out

    @property
    def samples(self) -> list:
        return [(float(t), PhasePoint.from_array(y)) for t, y in zip(self.t, self.states())]

    def observable(self, obs: Obs) -> np.ndarray:
        return np.real_if_close(evaluate(obs, self.states().T, self.system), tol=1e6)


@dataclass
class DriftReport:
    """Per observable: initial value, scale used, and max |value - initial| / scale."""

    initial: dict
    scale: dict
    max_drift: dict

    def worst(self) -> float:
        return max(self.max_drift.values())

    def to_json(self) -> dict:
        return {
            name: {"initial": self.initial[name], "scale": self.scale[name], "max_drift": self.max_drift[name]}
            for name in self.max_drift
        }


@dataclass(frozen=True)
class OrbitClass:
    kind: str  # "closed" | "open" | "circular"
    period: Optional[float] = None


def _code(sys: System) -> int:
    return 0 if sys.kind == "ho" else 1


def turning_radii(H: float, L2: float, sys: System) -> tuple:
    """Pericenter and apocenter of the radial motion (apocenter inf if unbound)."""
    if sys.kind == "kc":
        k = sys.param
        if H >= 0:
            if L2 == 0:
                return 0.0, math.inf
            return (-k + math.sqrt(k * k + 4 * H * L2)) / (2 * H) if H > 0 else L2 / k, math.inf
        disc = max(k * k + 4 * H * L2, 0.0)
        return (k - math.sqrt(disc)) / (-2 * H), (k + math.sqrt(disc)) / (-2 * H)
    w2 = sys.param**2 / 4
    disc = max(H * H - 4 * w2 * L2, 0.0)
    lo = (H - math.sqrt(disc)) / (2 * w2)
    hi = (H + math.sqrt(disc)) / (2 * w2)
    return math.sqrt(max(lo, 0.0)), math.sqrt(hi)


def default_step(pt: PhasePoint, sys: System, steps_per_radian: float = 16.0) -> float:
    """Fixed step resolving the fastest time scale of the orbit.

    That is the smaller of 1/1000 of the radial period and the time in which the
    azimuth advances 1/steps_per_radian radian at its fastest, i.e. at pericenter
    and closest approach to the polar axis: ``(|m|/ell) r_p^2 / (2 ell)``.
    """
    H = float(evaluate(Obs.H, pt, sys))
    L2 = float(evaluate(Obs.L2, pt, sys))
    if sys.kind == "ho":
        T = math.pi / sys.param
    elif H < 0:
        T = 2 * math.pi / sys.radial_frequency(H)
    else:
        T = 2 * math.pi * pt.r / max(2 * math.sqrt(H), 1e-3)
    dt = T / 1000
    if L2 > 0:
        ell = math.sqrt(L2)
        rp, _ = turning_radii(H, L2, sys)
        rp = max(rp, 1e-3)
        tilt = max(abs(pt.p_phi) / ell, 0.05)
        dt = min(dt, tilt * rp * rp / (2 * ell) / steps_per_radian)
    return dt


def _run(y0, sys, T, dt, line):
    nsteps = max(1, int(math.ceil(abs(T) / dt - 1e-9)))
    h = math.copysign(abs(T) / nsteps, T)
    every = max(1, int(math.ceil(nsteps / MAX_SAMPLES)))
    rows, status, done = kernel.flow(y0, nsteps, h, _code(sys), sys.param, int(line), every)
    t = np.arange(len(rows)) * (h * every)
    return t, rows, status, done, h, every, nsteps


def _h_drift(rows, sys, line):
    """Relative drift of H and L^2 (the latter is the sensitive one near the axis)."""
    tr = Trajectory(np.arange(len(rows), dtype=float), rows, sys, line)
    worst = 0.0
    for obs in (Obs.H, Obs.L2):
        v = tr.observable(obs)
        worst = max(worst, float(np.max(np.abs(v - v[0])) / max(abs(v[0]), 1e-300)))
    return worst


def hamilton_flow(pt0: PhasePoint, sys: System, T: float, ctrl: Optional[IntegratorControls] = None) -> Trajectory:
    """Integrate for duration ``T`` (negative T runs backwards in time).

    Fixed-step 6th-order Gauss-Legendre collocation; the step is halved until
    the relative drift of H (and of L^2) over the run is below ``ctrl.tolerance``.
    """
    ctrl = ctrl or IntegratorControls()
    H0, L20, _ = (float(v) for v in (evaluate(Obs.H, pt0, sys), evaluate(Obs.L2, pt0, sys), pt0.p_phi))
    if sys.kind == "kc" and H0 >= 0 and not ctrl.allow_unbound:
        raise IntegrationError("Kepler-Coulomb initial point is unbound (H >= 0); pass allow_unbound")
    line = L20 == 0.0
    if line and sys.kind == "kc":
        raise IntegrationError("zero angular momentum Kepler orbit falls into the centre")
    y0 = pt0.to_array()
    dt = ctrl.dt if ctrl.dt is not None else default_step(pt0, sys, ctrl.steps_per_radian)
    last = None
    for halving in range(ctrl.max_halvings + 1):
        t, rows, status, done, h, every, nsteps = _run(y0, sys, T, dt, line)
        if status == kernel.SINGULAR:
            raise IntegrationError(f"coordinate singularity after {done} steps (r or sin(theta) < 1e-4)")
        if status == kernel.OK:
            drift = _h_drift(rows, sys, line)
            last = drift
            if drift <= ctrl.tolerance:
                meta = {
                    "step": abs(h), "order": 6, "scheme": "gauss-legendre-3",
                    "tolerance": ctrl.tolerance, "halvings": halving, "record_every": every,
                    "steps": nsteps, "h_drift": drift, "backend": kernel.BACKEND,
                }
                if T < 0:
                    t, rows = t[::-1], rows[::-1]  # keep sample times ascending
                return Trajectory(t, rows, sys, line, meta)
        dt /= 2
    raise IntegrationError(f"energy drift {last} above tolerance {ctrl.tolerance} after step halving")


def _scale(obs: Obs, sys: System, H: float, L2: float, Lz: float) -> float:
    """Natural magnitude of each conserved quantity, used to make drifts relative
    (several of them vanish on special orbits, so their own value is no scale)."""
    ell = math.sqrt(L2)
    if obs is Obs.H:
        return abs(H) or 1.0
    if obs is Obs.L2:
        return L2 or 1.0
    if obs is Obs.LZ:
        return ell or 1.0
    if sys.kind == "kc":
        half_k = sys.param / 2
        return half_k if obs is Obs.X_SYM else max(ell * half_k, 1e-300)
    if obs is Obs.X_SYM:
        return max(L2 * abs(H), 1e-300)
    return max(2 * ell * abs(H), 1e-300)


def drift_report(traj: Trajectory, observables: Iterable[Obs] = CONSERVED) -> DriftReport:
    st = traj.states().T
    H0 = float(evaluate(Obs.H, st[:, 0], traj.system))
    L20 = float(evaluate(Obs.L2, st[:, 0], traj.system))
    Lz0 = float(st[5, 0])
    init, scale, drift = {}, {}, {}
    for obs in observables:
        vals = np.real(evaluate(obs, st, traj.system))
        s = _scale(obs, traj.system, H0, L20, Lz0)
        init[obs.value] = float(vals[0])
        scale[obs.value] = s
        drift[obs.value] = float(np.max(np.abs(vals - vals[0])) / s)
    return DriftReport(init, scale, drift)


def _refine(y, sys, line):
    """Newton solve for the time offset where p_r vanishes, using single Gauss steps."""
    code = _code(sys)
    tau = 0.0
    for _ in range(30):
        yt, status = kernel.gauss_step(y, tau, code, sys.param, int(line))
        if status != kernel.OK:
            break
        f = kernel._flow_py.rhs(list(yt), code, sys.param, int(line))
        if f[1] == 0:
            break
        dtau = -yt[1] / f[1]
        tau += dtau
        if abs(dtau) <= 1e-15 * (1 + abs(tau)):
            break
    yt, _ = kernel.gauss_step(y, tau, code, sys.param, int(line))
    return tau, yt


def turning_points(traj: Trajectory, kind: str = "max") -> list:
    """Refined times and internal states at which r is maximal (or minimal).

    Sign changes of p_r between samples are located, then each crossing is
    refined by Newton iteration on the exact step map.  In line mode |x| is
    maximal at every sign change of p, and minima (passes through the centre)
    are not reported.
    """
    pr = traj.y[:, 1]
    if traj.line:
        if kind != "max":
            return []
        cross = np.nonzero(np.sign(pr[:-1]) != np.sign(pr[1:]))[0]
    elif kind == "max":
        cross = np.nonzero((pr[:-1] > 0) & (pr[1:] <= 0))[0]
    else:
        cross = np.nonzero((pr[:-1] < 0) & (pr[1:] >= 0))[0]
    out = []
    for i in cross:
        tau, yt = _refine(traj.y[i], traj.system, traj.line)
        out.append((float(traj.t[i] + tau), yt))
    return out


def radial_period(traj: Trajectory) -> float:
    """Mean spacing of the refined r maxima; needs at least three turning points."""
    r = traj.states()[:, 0]
    if np.ptp(r) <= 1e-7 * np.max(r):
        raise InsufficientDataError("r is constant: circular orbit has no turning points")
    tp = turning_points(traj, "max")
    tmin = turning_points(traj, "min")
    if len(tp) + len(tmin) < 3 or len(tp) < 2:
        raise InsufficientDataError("fewer than three radial turning points")
    times = [t for t, _ in tp]
    return (times[-1] - times[0]) / (len(times) - 1)


def _state_distance(a, b) -> float:
    d = np.abs(np.asarray(a) - np.asarray(b))
    d[4] = abs((a[4] - b[4] + math.pi) % (2 * math.pi) - math.pi)
    return float(np.max(d))


def classify_orbit(traj: Trajectory, tol: float = 1e-5) -> OrbitClass:
    """Closed if the phase point recurs (all six coordinates, phi mod 2 pi) at a
    later r maximum; circular if r never varies; open otherwise."""
    st = traj.states()
    H0 = float(evaluate(Obs.H, st[0], traj.system))
    r = st[:, 0]
    if traj.system.kind == "kc" and H0 >= 0:
        return OrbitClass("open")
    if np.ptp(r) <= 1e-7 * np.max(r):
        return OrbitClass("circular")
    tp = turning_points(traj, "max")
    if len(tp) < 2:
        return OrbitClass("open")
    t0, y0 = tp[0]
    for t1, y1 in tp[1:]:
        if _state_distance(y0, y1) <= tol:
            return OrbitClass("closed", float(t1 - t0))
    return OrbitClass("open")
