"""Closed-form gradients of the classical catalog, derived symbolically.

Each observable is transcribed once more as a sympy expression in the canonical
coordinates, with the frozen constants ``ell``, ``m`` and the system parameter as
free symbols, and differentiated exactly.  The transcription is independent of
the numpy evaluators in :mod:`superfactor.classical`, so agreement between the
two (values and finite-difference gradients) is a genuine cross-check.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
import sympy as sp

from .classical import Obs, PhasePoint, System, frozen_at

__all__ = ["expression", "analytic_gradient", "symbolic_value", "COORDS"]

r, pr, th, pth, ph, pph = COORDS = sp.symbols("r p_r theta p_theta phi p_phi", real=True)
ell, m, par = sp.symbols("ell m par", real=True)


def _l2():
    return pth**2 + pph**2 / sp.sin(th) ** 2


def _ham(kind):
    V = par**2 * r**2 / 4 if kind == "ho" else -par / r
    return pr**2 + V + _l2() / r**2


def _cart():
    st, ct, sph, cph = sp.sin(th), sp.cos(th), sp.sin(ph), sp.cos(ph)
    rhat = sp.Matrix([st * cph, st * sph, ct])
    that = sp.Matrix([ct * cph, ct * sph, -st])
    phat = sp.Matrix([-sph, cph, 0])
    q = r * rhat
    p = pr * rhat + (pth / r) * that + (pph / (r * st)) * phat
    return q, p, rhat


def _expr(obs: Obs, kind: str):
    I = sp.I
    s = obs.sign
    if obs is Obs.H:
        return _ham(kind)
    if obs is Obs.L2:
        return _l2()
    if obs is Obs.SQRT_L2:
        return sp.sqrt(_l2())
    if obs is Obs.LZ:
        return pph
    if obs in (Obs.LPHI_P, Obs.LPHI_M):
        return sp.exp(s * I * ph)
    if obs in (Obs.SIGMA_TH_P, Obs.SIGMA_TH_M):
        return s * I * pth - m * sp.cot(th)
    if obs in (Obs.A_P, Obs.A_M):
        return sp.exp(s * I * ph) * (s * I * pth - pph * sp.cot(th))
    if obs in (Obs.LAMBDA_TH_P, Obs.LAMBDA_TH_M):
        return s * I * sp.sin(th) * pth + ell * sp.cos(th)
    a = lambda sg: -sg * I * pr + ell / r + par * r / 2  # noqa: E731
    b = lambda sg: -sg * I * pr + ell / r - par * r / 2  # noqa: E731
    if obs in (Obs.A_HO_P, Obs.A_HO_M):
        return a(s)
    if obs in (Obs.B_HO_P, Obs.B_HO_M):
        return b(s)
    if obs in (Obs.SIGMA_R_P, Obs.SIGMA_R_M):
        return b(s) * a(s) if kind == "ho" else -s * I * pr + ell / r - par / (2 * ell)
    if obs in (Obs.LAMBDA_R_P, Obs.LAMBDA_R_M):
        if kind == "ho":
            return a(s) * b(-s)
        w = sp.sqrt(-_ham(kind))
        return (-s * I * r * pr + r * w - par / (2 * w)) * sp.exp(-s * 2 * I * r * pr * w / par)
    if obs in (Obs.S_P, Obs.S_M):
        sig = _expr(Obs.SIGMA_R_P if s > 0 else Obs.SIGMA_R_M, kind)
        lam = s * I * sp.sin(th) * pth + ell * sp.cos(th)
        return sig * lam**2 if kind == "ho" else sig * lam
    q, p, rhat = _cart()
    L = q.cross(p)
    if obs is Obs.L_X:
        return L[0]
    if obs is Obs.L_Y:
        return L[1]
    if kind == "ho":
        w2 = par**2 / 4
        Q = lambda i, j: p[i] * p[j] + w2 * q[i] * q[j]  # noqa: E731
        table = {Obs.Q_XX: (0, 0), Obs.Q_YY: (1, 1), Obs.Q_ZZ: (2, 2),
                 Obs.Q_XY: (0, 1), Obs.Q_YZ: (1, 2), Obs.Q_ZX: (2, 0)}
        if obs in table:
            return Q(*table[obs])
        if obs is Obs.X_SYM:
            return (_l2() - pph**2) * _ham(kind) - 2 * _l2() * Q(2, 2)
        if obs is Obs.X_ANTI:
            return 2 * (L[0] * Q(1, 2) - L[1] * Q(2, 0))
    else:
        A = p.cross(L) - par / 2 * rhat
        table = {Obs.RL_X: A[0], Obs.RL_Y: A[1], Obs.RL_Z: A[2],
                 Obs.X_SYM: A[2], Obs.X_ANTI: L[0] * A[1] - L[1] * A[0]}
        if obs in table:
            return table[obs]
    raise ValueError(f"{obs.value} is not defined for {kind}")


@lru_cache(maxsize=None)
def expression(obs: Obs, kind: str):
    return _expr(obs, kind)


@lru_cache(maxsize=None)
def _compiled(obs: Obs, kind: str):
    e = expression(obs, kind)
    args = (*COORDS, ell, m, par)
    value = sp.lambdify(args, e, "numpy")
    grads = [sp.lambdify(args, sp.diff(e, c), "numpy") for c in COORDS]
    return value, grads


def _args(x, sys, frozen):
    if isinstance(x, PhasePoint):
        x = x.to_array()
    x = np.asarray(x, dtype=float)
    lv, mv = frozen if frozen is not None else frozen_at(x)
    return (*x, lv, mv, sys.param)


def symbolic_value(obs: Obs, x, sys: System, frozen=None):
    value, _ = _compiled(obs, sys.kind)
    return value(*_args(x, sys, frozen))


def analytic_gradient(obs: Obs, x, sys: System, frozen=None) -> np.ndarray:
    """Exact partial derivatives ``(d/dr, d/dp_r, d/dtheta, d/dp_theta, d/dphi, d/dp_phi)``
    at fixed frozen constants."""
    _, grads = _compiled(obs, sys.kind)
    args = _args(x, sys, frozen)
    shape = np.shape(args[0])
    return np.array([np.broadcast_to(g(*args), shape) for g in grads])
