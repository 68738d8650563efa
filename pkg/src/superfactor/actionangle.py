"""Actions and angles from the moduli and phases of the classical symmetries.

Angles are phases of complex carriers, never arccos formulas:

    xi_phi   = arg A+                      (conserved)
    xi_theta = arg S+                      (conserved; S+ = sigma+_r lambda+_theta^k,
                                            k = 1 Kepler, 2 oscillator)
    xi_r     = arg lambda+_r               (advances at alpha(H) or 2 omega)

Actions:

    J_phi = p_phi
    J_theta = ell - |m|          (Kepler)      sqrt(L^2)/2 - |m|/2   (oscillator)
    J_r = k/(2 sqrt(-H)) - ell   (Kepler)      H/(2 omega) - ell/2   (oscillator)
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .classical import DomainError, Obs, PhasePoint, System, evaluate

__all__ = [
    "ActionAngleSet",
    "DegenerateOrbitError",
    "SamplingTooCoarseError",
    "DEGENERACY_RADIUS",
    "phase_of",
    "actions",
    "action_angles",
    "actions_kc",
    "actions_ho",
    "angle_functions",
    "action_functions",
    "unwrap_along",
    "angle_series",
    "fit_line",
    "table_phase_ratios",
    "slope_expected",
    "safe_arccos",
    "arccos_phases",
    "recombined_angle_functions",
]

#: arccos arguments this close outside [-1, 1] are rounding and get clamped
ARCCOS_SLACK = 1e-12

DEGENERACY_RADIUS = 1e-12


class DegenerateOrbitError(ValueError):
    """A carrier vanishes, so its phase is undefined (circular or equatorial limit)."""


class SamplingTooCoarseError(ValueError):
    """Consecutive samples too far apart to unwrap a phase unambiguously."""


@dataclass(frozen=True)
class ActionAngleSet:
    J_phi: float
    J_theta: float
    J_r: float
    xi_phi: float
    xi_theta: float
    xi_r: float

    def to_json(self) -> dict:
        return asdict(self)


def phase_of(value: complex, carrier: str = "") -> float:
    """Argument in (-pi, pi]; refuses values inside the degeneracy radius."""
    if abs(value) <= DEGENERACY_RADIUS:
        label = f" of {carrier}" if carrier else ""
        raise DegenerateOrbitError(f"modulus{label} below {DEGENERACY_RADIUS}: phase undefined")
    return math.atan2(value.imag, value.real)


def _as_array(pt):
    return pt.to_array() if isinstance(pt, PhasePoint) else np.asarray(pt, dtype=float)


def _actions_vec(x, sys: System):
    """Vectorized ``(J_phi, J_theta, J_r)``."""
    H = np.real(evaluate(Obs.H, x, sys))
    ell = np.sqrt(np.real(evaluate(Obs.L2, x, sys)))
    m = np.abs(x[5])
    if sys.kind == "kc":
        if np.any(H >= 0):
            raise DomainError("Kepler actions need bound motion (H < 0)")
        return x[5], ell - m, sys.param / (2 * np.sqrt(-H)) - ell
    return x[5], 0.5 * ell - 0.5 * m, H / (2 * sys.param) - 0.5 * ell


def actions(pt, sys: System) -> tuple:
    """``(J_phi, J_theta, J_r)`` without the angles, defined on degenerate orbits too."""
    return tuple(float(v) for v in _actions_vec(_as_array(pt), sys))


def _angles_vec(x, sys: System):
    a = evaluate(Obs.A_P, x, sys)
    s = evaluate(Obs.S_P, x, sys)
    lam = evaluate(Obs.LAMBDA_R_P, x, sys)
    return np.angle(a), np.angle(s), np.angle(lam), (a, s, lam)


def action_angles(pt, sys: System) -> ActionAngleSet:
    x = _as_array(pt)
    J = actions(x, sys)
    xs = []
    for obs, name in ((Obs.A_P, "A+"), (Obs.S_P, "S+"), (Obs.LAMBDA_R_P, "lambda+_r")):
        val = complex(evaluate(obs, x, sys))
        xs.append(phase_of(val, name))
    # S+ is a product; guard each factor, its modulus can vanish quadratically
    for obs, name in ((Obs.SIGMA_R_P, "sigma+_r"), (Obs.LAMBDA_TH_P, "lambda+_theta")):
        phase_of(complex(evaluate(obs, x, sys)), name)
    return ActionAngleSet(*J, *xs)


def actions_kc(pt, k: float = 1.0) -> ActionAngleSet:
    return action_angles(pt, System.kc(k))


def actions_ho(pt, omega: float = 1.0) -> ActionAngleSet:
    return action_angles(pt, System.ho(omega))


def angle_functions(sys: System) -> dict:
    """Circle-valued phase-space functions ``x -> xi`` (live constants), for brackets."""
    return {
        "xi_phi": lambda x: np.angle(evaluate(Obs.A_P, x, sys)),
        "xi_theta": lambda x: np.angle(evaluate(Obs.S_P, x, sys)),
        "xi_r": lambda x: np.angle(evaluate(Obs.LAMBDA_R_P, x, sys)),
    }


def action_functions(sys: System) -> dict:
    return {
        "J_phi": lambda x: _actions_vec(np.asarray(x, dtype=float), sys)[0],
        "J_theta": lambda x: _actions_vec(np.asarray(x, dtype=float), sys)[1],
        "J_r": lambda x: _actions_vec(np.asarray(x, dtype=float), sys)[2],
    }


def unwrap_along(values, max_jump: float = 0.9 * math.pi) -> np.ndarray:
    """Add multiples of 2 pi so consecutive samples differ by less than pi.

    If a wrapped step is larger than ``max_jump`` the direction of travel is
    ambiguous and :class:`SamplingTooCoarseError` is raised; resample finer.
    """
    v = np.asarray(values, dtype=float)
    if len(v) < 2:
        return v.copy()
    d = np.diff(v)
    dw = (d + math.pi) % (2 * math.pi) - math.pi
    if np.max(np.abs(dw)) > max_jump:
        raise SamplingTooCoarseError(f"phase step {np.max(np.abs(dw)):.3f} rad between samples")
    return np.concatenate([[v[0]], v[0] + np.cumsum(dw)])


def angle_series(states: np.ndarray, sys: System, strict: bool = True) -> dict:
    """Actions and unwrapped angles along sampled states of shape (N, 6).

    A carrier that reaches the degeneracy radius leaves its angle undefined:
    ``strict`` raises :class:`DegenerateOrbitError`, otherwise that angle is
    ``None`` and its name is listed under ``"degenerate"``.
    """
    x = np.asarray(states, dtype=float).T
    J_phi, J_theta, J_r = _actions_vec(x, sys)
    out = {
        "J_phi": np.asarray(J_phi, dtype=float) * np.ones(x.shape[1]),
        "J_theta": np.asarray(J_theta, dtype=float),
        "J_r": np.asarray(J_r, dtype=float),
        "degenerate": [],
    }
    phases = _angles_vec(x, sys)
    for key, name, xi, c in zip(("xi_phi", "xi_theta", "xi_r"), ("A+", "S+", "lambda+_r"), phases[:3], phases[3]):
        if np.min(np.abs(c)) <= DEGENERACY_RADIUS:
            if strict:
                raise DegenerateOrbitError(f"{name} vanishes along the orbit")
            out[key] = None
            out["degenerate"].append(key)
        else:
            out[key] = unwrap_along(xi)
    return out


def fit_line(t, y) -> dict:
    """Least-squares line; residual is the max absolute deviation from it."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    A = np.vstack([t, np.ones_like(t)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.max(np.abs(y - (slope * t + intercept))))
    return {"slope": float(slope), "intercept": float(intercept), "max_residual": resid}


def table_phase_ratios(pt, sys: System) -> dict:
    """For each tabulated carrier, ``Re(f)/|f|`` next to the closed-form ratio whose
    arccos is the phase (up to branch and sign), evaluated with ``E = H``,
    ``ell^2 = L^2``, ``m = L_z``.

    The closed forms are the ones that follow from the carriers themselves; the
    comparison is ``|carrier ratio| == |closed form|``.
    """
    x = _as_array(pt)
    r, _, th, _, ph, m = x
    H = float(np.real(evaluate(Obs.H, x, sys)))
    L2 = float(np.real(evaluate(Obs.L2, x, sys)))
    ell = math.sqrt(L2)
    out = {}

    def ratio(obs, strip_phi=False):
        v = complex(evaluate(obs, x, sys))
        if strip_phi:
            v *= complex(math.cos(ph), -math.sin(ph))
        return v.real / abs(v)

    out["A"] = (ratio(Obs.A_P, strip_phi=True), m / math.tan(th) / math.sqrt(L2 - m * m))
    out["lambda_theta"] = (ratio(Obs.LAMBDA_TH_P), ell * math.cos(th) / math.sqrt(L2 - m * m))
    if sys.kind == "ho":
        w = sys.param
        out["a"] = (ratio(Obs.A_HO_P), (2 * ell + w * r * r) / (2 * r * math.sqrt(H + w * ell)))
        out["b"] = (ratio(Obs.B_HO_P), (2 * ell - w * r * r) / (2 * r * math.sqrt(H - w * ell)))
        root = math.sqrt(H * H - w * w * L2)
        out["sigma_r"] = (ratio(Obs.SIGMA_R_P), (-H + 2 * L2 / (r * r)) / root)
        out["lambda_r"] = (ratio(Obs.LAMBDA_R_P), (H - 0.5 * w * w * r * r) / root)
    else:
        k = sys.param
        out["sigma_r"] = (ratio(Obs.SIGMA_R_P), (2 * L2 - k * r) / (r * math.sqrt(4 * L2 * H + k * k)))
        out["lambda_r_amplitude"] = (
            # phase of lambda+_r without its exp(-2i r p_r sqrt(-H)/k) factor
            _lambda_kc_ratio(x, sys),
            (-2 * H * r - k) / math.sqrt(k * k + 4 * H * L2),
        )
    return out


def _lambda_kc_ratio(x, sys: System) -> float:
    H = float(np.real(evaluate(Obs.H, x, sys)))
    k = sys.param
    r, pr = x[0], x[1]
    sq = math.sqrt(-H)
    v = complex(evaluate(Obs.LAMBDA_R_P, x, sys)) * complex(
        math.cos(2 * r * pr * sq / k), math.sin(2 * r * pr * sq / k)
    )
    return v.real / abs(v)


def slope_expected(sys: System, H: float) -> float:
    return sys.radial_frequency(H)


def safe_arccos(v: float) -> float:
    """arccos with rounding slack: clamps within ``ARCCOS_SLACK`` of +-1, raises beyond."""
    if abs(v) > 1 + ARCCOS_SLACK or math.isnan(v):
        raise DomainError(f"arccos argument {v!r} outside [-1, 1]")
    return math.acos(max(-1.0, min(1.0, v)))


def arccos_phases(pt, sys: System) -> dict:
    """Principal-branch ``arccos`` of each closed-form ratio in :func:`table_phase_ratios`.

    These fix a phase only up to sign and branch; the carrier phase from
    :func:`phase_of` is the one used for the angles.
    """
    return {key: safe_arccos(closed) for key, (_, closed) in table_phase_ratios(pt, sys).items()}


def recombined_angle_functions(sys: System) -> dict:
    """Angles canonically conjugate to ``(J_phi, J_theta, J_r)``.

    The carrier phases have two nonzero cross brackets,
    ``{xi_phi, J_theta} = -c sign(m)`` and ``{xi_theta, J_r} = -1``
    (``c = 1`` Kepler, ``1/2`` oscillator).  Shifting

        eta_r = xi_r,   eta_theta = xi_theta + xi_r,
        eta_phi = xi_phi + c sign(m) eta_theta

    removes both while keeping the diagonal brackets equal to 1.
    """
    base = angle_functions(sys)
    c = 1.0 if sys.kind == "kc" else 0.5

    def eta_theta(x):
        return base["xi_theta"](x) + base["xi_r"](x)

    def eta_phi(x):
        return base["xi_phi"](x) + c * np.sign(np.asarray(x, dtype=float)[5]) * eta_theta(x)

    return {"eta_phi": eta_phi, "eta_theta": eta_theta, "eta_r": base["xi_r"]}

