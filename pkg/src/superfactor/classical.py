"""Classical phase-space functions of the central-force problems and Poisson brackets.

Phase points are canonical spherical coordinates ``(r, p_r, theta, p_theta, phi, p_phi)``
with ``H = p_r^2 + V(r) + L^2/r^2`` (mass 1/2).  Functions that carry the separation
constants ``ell`` or ``m`` (theta ladders, radial factors, symmetries) take them as
*frozen* parameters: they are read off the base point and held fixed while the
function is differentiated.  That is the meaning of the ``L^2 -> ell^2``
substitution attached to the bracket identities.

Evaluators are vectorized: ``x`` may have shape ``(6,)`` or ``(6, N)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "System",
    "PhasePoint",
    "Obs",
    "SingularityError",
    "DomainError",
    "frozen_at",
    "evaluate",
    "closure",
    "eval_involutive",
    "cartesian",
    "poisson_bracket_fd",
    "gradient_fd",
]


class SingularityError(ValueError):
    """Point too close to a coordinate singularity."""


class DomainError(ValueError):
    """Function undefined at the requested point (e.g. Kepler ladder with H >= 0)."""


@dataclass(frozen=True)
class System:
    """``kind`` is ``"ho"`` (V = w^2 r^2/4) or ``"kc"`` (V = -k/r); ``param`` is w or k."""

    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in ("ho", "kc"):
            raise ValueError(f"unknown system {self.kind!r}")
        if not self.param > 0:
            raise ValueError("system parameter must be positive")
        object.__setattr__(self, "param", float(self.param))

    @classmethod
    def ho(cls, omega: float = 1.0) -> "System":
        return cls("ho", omega)

    @classmethod
    def kc(cls, k: float = 1.0) -> "System":
        return cls("kc", k)

    @property
    def omega(self) -> float:
        if self.kind != "ho":
            raise AttributeError("omega is only defined for the oscillator")
        return self.param

    @property
    def k(self) -> float:
        if self.kind != "kc":
            raise AttributeError("k is only defined for Kepler-Coulomb")
        return self.param

    def potential(self, r):
        if self.kind == "ho":
            return 0.25 * self.param**2 * r * r
        return -self.param / r

    def dpotential(self, r):
        if self.kind == "ho":
            return 0.5 * self.param**2 * r
        return self.param / (r * r)

    def radial_frequency(self, H):
        """Angular frequency of r(t): ``2w`` (HO) or ``alpha = 4(-H)^(3/2)/k`` (KC)."""
        if self.kind == "ho":
            return 2.0 * self.param
        return 4.0 * (-H) ** 1.5 / self.param


@dataclass(frozen=True)
class PhasePoint:
    r: float
    p_r: float
    theta: float
    p_theta: float
    phi: float
    p_phi: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("r must be positive")
        if not 0 < self.theta < np.pi:
            raise ValueError("theta must lie strictly inside (0, pi)")

    def to_array(self) -> np.ndarray:
        return np.array([self.r, self.p_r, self.theta, self.p_theta, self.phi, self.p_phi])

    @classmethod
    def from_array(cls, x) -> "PhasePoint":
        return cls(*(float(v) for v in x))


class Obs(enum.Enum):
    H = "H"
    L2 = "L2"
    LZ = "Lz"
    SQRT_L2 = "sqrtL2"
    LPHI_P = "l+phi"
    LPHI_M = "l-phi"
    SIGMA_TH_P = "sigma+theta"
    SIGMA_TH_M = "sigma-theta"
    A_P = "A+"
    A_M = "A-"
    LAMBDA_TH_P = "lambda+theta"
    LAMBDA_TH_M = "lambda-theta"
    A_HO_P = "a+"
    A_HO_M = "a-"
    B_HO_P = "b+"
    B_HO_M = "b-"
    SIGMA_R_P = "sigma+r"
    SIGMA_R_M = "sigma-r"
    LAMBDA_R_P = "lambda+r"
    LAMBDA_R_M = "lambda-r"
    S_P = "S+"
    S_M = "S-"
    X_SYM = "Xsym"
    X_ANTI = "Xanti"
    Q_XX = "Qxx"
    Q_YY = "Qyy"
    Q_ZZ = "Qzz"
    Q_XY = "Qxy"
    Q_YZ = "Qyz"
    Q_ZX = "Qzx"
    RL_X = "Ax"
    RL_Y = "Ay"
    RL_Z = "Az"
    L_X = "Lx"
    L_Y = "Ly"

    @property
    def sign(self) -> int:
        if self.name.endswith("_P"):
            return 1
        if self.name.endswith("_M"):
            return -1
        return 0

    @property
    def frozen(self) -> bool:
        """True if the function depends on the frozen separation constants."""
        return self in _FROZEN


_FROZEN = {
    Obs.SIGMA_TH_P, Obs.SIGMA_TH_M, Obs.LAMBDA_TH_P, Obs.LAMBDA_TH_M,
    Obs.A_HO_P, Obs.A_HO_M, Obs.B_HO_P, Obs.B_HO_M,
    Obs.SIGMA_R_P, Obs.SIGMA_R_M, Obs.LAMBDA_R_P, Obs.LAMBDA_R_M, Obs.S_P, Obs.S_M,
}

_HO_ONLY = {Obs.A_HO_P, Obs.A_HO_M, Obs.B_HO_P, Obs.B_HO_M,
            Obs.Q_XX, Obs.Q_YY, Obs.Q_ZZ, Obs.Q_XY, Obs.Q_YZ, Obs.Q_ZX}
_KC_ONLY = {Obs.RL_X, Obs.RL_Y, Obs.RL_Z}


# --------------------------------------------------------------------------- evaluators


def _l2(th, pth, pph):
    return pth * pth + pph * pph / np.sin(th) ** 2


def _ham(sys: System, r, pr, th, pth, pph):
    return pr * pr + sys.potential(r) + _l2(th, pth, pph) / (r * r)


def frozen_at(x) -> tuple:
    """Separation constants ``(ell, m) = (sqrt(L^2), p_phi)`` read off a point."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(_l2(x[2], x[3], x[5])), x[5]


def eval_involutive(pt, sys: System) -> tuple:
    x = pt.to_array() if isinstance(pt, PhasePoint) else np.asarray(pt, dtype=float)
    r, pr, th, pth, _, pph = x
    return _ham(sys, r, pr, th, pth, pph), _l2(th, pth, pph), pph


def cartesian(x) -> tuple:
    """Positions and momenta ``(q, p)`` as 3-vectors (each of shape (3,) or (3, N))."""
    r, pr, th, pth, ph, pph = np.asarray(x, dtype=float)
    st, ct, sp, cp = np.sin(th), np.cos(th), np.sin(ph), np.cos(ph)
    rhat = np.array([st * cp, st * sp, ct])
    that = np.array([ct * cp, ct * sp, -st])
    phat = np.array([-sp, cp, 0 * sp])
    q = r * rhat
    p = pr * rhat + (pth / r) * that + (pph / (r * st)) * phat
    return q, p


def _poly_symmetries(sys: System, x) -> dict:
    q, p = cartesian(x)
    L = np.cross(q, p, axis=0)
    out = {Obs.L_X: L[0], Obs.L_Y: L[1]}
    r, pr, th, pth, _, pph = np.asarray(x, dtype=float)
    if sys.kind == "ho":
        w2 = 0.25 * sys.param**2
        Q = {
            Obs.Q_XX: p[0] * p[0] + w2 * q[0] * q[0],
            Obs.Q_YY: p[1] * p[1] + w2 * q[1] * q[1],
            Obs.Q_ZZ: p[2] * p[2] + w2 * q[2] * q[2],
            Obs.Q_XY: p[0] * p[1] + w2 * q[0] * q[1],
            Obs.Q_YZ: p[1] * p[2] + w2 * q[1] * q[2],
            Obs.Q_ZX: p[2] * p[0] + w2 * q[2] * q[0],
        }
        out.update(Q)
        L2 = _l2(th, pth, pph)
        H = _ham(sys, r, pr, th, pth, pph)
        out[Obs.X_SYM] = (L2 - pph * pph) * H - 2 * L2 * Q[Obs.Q_ZZ]
        out[Obs.X_ANTI] = 2 * (L[0] * Q[Obs.Q_YZ] - L[1] * Q[Obs.Q_ZX])
    else:
        rhat = q / r
        A = np.cross(p, L, axis=0) - 0.5 * sys.param * rhat
        out.update({Obs.RL_X: A[0], Obs.RL_Y: A[1], Obs.RL_Z: A[2]})
        out[Obs.X_SYM] = A[2]
        out[Obs.X_ANTI] = L[0] * A[1] - L[1] * A[0]
    return out


def _raw(obs: Obs, sys: System, x, ell, m):
    r, pr, th, pth, ph, pph = x
    s = obs.sign
    if obs is Obs.H:
        return _ham(sys, r, pr, th, pth, pph)
    if obs is Obs.L2:
        return _l2(th, pth, pph)
    if obs is Obs.SQRT_L2:
        return np.sqrt(_l2(th, pth, pph))
    if obs is Obs.LZ:
        return pph
    if obs in (Obs.LPHI_P, Obs.LPHI_M):
        return np.exp(s * 1j * ph)
    if obs in (Obs.SIGMA_TH_P, Obs.SIGMA_TH_M):
        return s * 1j * pth - m / np.tan(th)
    if obs in (Obs.A_P, Obs.A_M):
        return np.exp(s * 1j * ph) * (s * 1j * pth - pph / np.tan(th))
    if obs in (Obs.LAMBDA_TH_P, Obs.LAMBDA_TH_M):
        return s * 1j * np.sin(th) * pth + ell * np.cos(th)
    if obs in _HO_ONLY and sys.kind != "ho" or obs in _KC_ONLY and sys.kind != "kc":
        raise DomainError(f"{obs.value} is not defined for {sys.kind}")
    if obs in (Obs.A_HO_P, Obs.A_HO_M):
        return -s * 1j * pr + ell / r + 0.5 * sys.param * r
    if obs in (Obs.B_HO_P, Obs.B_HO_M):
        return -s * 1j * pr + ell / r - 0.5 * sys.param * r
    if obs in (Obs.SIGMA_R_P, Obs.SIGMA_R_M):
        if sys.kind == "ho":
            a = -s * 1j * pr + ell / r + 0.5 * sys.param * r
            b = -s * 1j * pr + ell / r - 0.5 * sys.param * r
            return b * a
        return -s * 1j * pr + ell / r - sys.param / (2 * ell)
    if obs in (Obs.LAMBDA_R_P, Obs.LAMBDA_R_M):
        if sys.kind == "ho":
            a = -s * 1j * pr + ell / r + 0.5 * sys.param * r
            b = s * 1j * pr + ell / r - 0.5 * sys.param * r
            return a * b
        H = _ham(sys, r, pr, th, pth, pph)
        if np.any(H >= 0):
            raise DomainError("Kepler ladder functions need bound motion (H < 0)")
        k = sys.param
        sq = np.sqrt(-H)
        return (-s * 1j * r * pr + r * sq - k / (2 * sq)) * np.exp(-s * 2j * r * pr * sq / k)
    if obs in (Obs.S_P, Obs.S_M):
        sig = _raw(Obs.SIGMA_R_P if s > 0 else Obs.SIGMA_R_M, sys, x, ell, m)
        lam = s * 1j * np.sin(th) * pth + ell * np.cos(th)
        return sig * lam * lam if sys.kind == "ho" else sig * lam
    return _poly_symmetries(sys, x)[obs]


def evaluate(obs: Obs, x, sys: System, frozen: Optional[tuple] = None):
    """Value of ``obs`` at ``x``; frozen constants default to those of ``x`` itself."""
    if isinstance(x, PhasePoint):
        x = x.to_array()
    x = np.asarray(x, dtype=float)
    ell, m = frozen if frozen is not None else frozen_at(x)
    return _raw(obs, sys, x, ell, m)


def closure(obs: Obs, sys: System, frozen: Optional[tuple] = None) -> Callable:
    """``x -> evaluate(obs, x, sys, frozen)`` for use with the bracket oracle."""
    return lambda x: evaluate(obs, x, sys, frozen)


# --------------------------------------------------------------------------- FD oracle


def _wrap(d):
    return (d + np.pi) % (2 * np.pi) - np.pi


def _guard(x, h):
    x = np.asarray(x, dtype=float)
    if np.any(x[0] <= 10 * h) or np.any(np.abs(np.sin(x[2])) <= 10 * h):
        raise SingularityError("point within 10 h of r = 0 or the polar axis")


def _partial(f, x, i, h, angle):
    xp = x.copy()
    xm = x.copy()
    xp[i] = xp[i] + h
    xm[i] = xm[i] - h
    d = f(xp) - f(xm)
    if angle:
        d = _wrap(d)
    return d / (2 * h)


def gradient_fd(f: Callable, x, h: float = 1e-3, angle: bool = False) -> np.ndarray:
    """Central differences at steps h and h/2 combined by Richardson extrapolation.

    ``angle=True`` treats ``f`` as circle-valued and wraps differences into (-pi, pi].
    """
    x = np.asarray(x, dtype=float)
    _guard(x, h)
    out = []
    for i in range(6):
        d1 = _partial(f, x, i, h, angle)
        d2 = _partial(f, x, i, h / 2, angle)
        out.append((4 * d2 - d1) / 3)
    return np.array(out)


def poisson_bracket_fd(
    f: Callable, g: Callable, x, h: float = 1e-3, f_angle: bool = False, g_angle: bool = False
):
    """``{f, g} = sum_q df/dq dg/dp - df/dp dg/dq`` by finite differences."""
    gf = gradient_fd(f, x, h, f_angle)
    gg = gradient_fd(g, x, h, g_angle)
    return sum(gf[2 * i] * gg[2 * i + 1] - gf[2 * i + 1] * gg[2 * i] for i in range(3))


def poisson_bracket_grad(gf, gg):
    """Bracket from two gradient vectors ordered ``(r, p_r, theta, p_theta, phi, p_phi)``."""
    return sum(gf[2 * i] * gg[2 * i + 1] - gf[2 * i + 1] * gg[2 * i] for i in range(3))
