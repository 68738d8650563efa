"""Quantum angular sector: L_z ladder, polar shift/ladder operators, spherical harmonics.

All polar operators are assembled as sums of terms ``sin^b * poly(cos)`` whose sin
power may temporarily be negative; the sum is brought back into the closed class
at the end, which is what makes cancellations such as ``d/dtheta - m cot`` on
``sin^m`` exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _poly
from .exactfun import (
    AngularFunction,
    AzimuthalMode,
    RepresentationError,
    _lau_add,
    _lau_deriv,
    _settle,
)

__all__ = [
    "AngularPair",
    "InvalidLabelError",
    "apply_lz",
    "ladder_phi",
    "shift_theta",
    "ladder_theta",
    "apply_cl",
    "apply_l2m",
    "angular_symmetry",
    "build_spherical_harmonic",
    "RepresentationError",
]


class InvalidLabelError(ValueError):
    """Quantum numbers outside the allowed lattice."""


def _sign(sign) -> int:
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


# Laurent-term builders: each returns (sin power, poly in cos) for one term


def _term(g: AngularFunction):
    return g.a, g.coeffs


def _d(t):
    return _lau_deriv(*t)


def _cot(t, c):
    a, p = t
    return a - 1, _poly.shift(_poly.scale(p, c), 1)


def _cos(t, c=1):
    a, p = t
    return a, _poly.shift(_poly.scale(p, c), 1)


def _sin(t, k=1, c=1):
    a, p = t
    return a + k, _poly.scale(p, c)


def _scale(t, c):
    a, p = t
    return a, _poly.scale(p, c)


def _combine(*terms) -> AngularFunction:
    return _settle(*_lau_add(list(terms)))


@dataclass(frozen=True)
class AngularPair:
    """``P(theta) * exp(i m phi)`` with labels (ell, m)."""

    theta: AngularFunction
    mode: AzimuthalMode
    ell: int
    m: int

    def __post_init__(self):
        if self.mode.m != self.m:
            raise ValueError("azimuthal mode does not match label m")
        if not self.is_zero and not (self.ell >= abs(self.m)):
            raise InvalidLabelError(f"|m| > ell for ell={self.ell}, m={self.m}")

    @property
    def is_zero(self) -> bool:
        return self.theta.is_zero

    def __call__(self, theta, phi):
        return self.theta(theta) * self.mode(phi)

    def to_json(self) -> dict:
        return {"ell": self.ell, "m": self.m, "theta": self.theta.to_json(), "phi": self.mode.to_json()}


def apply_lz(mode: AzimuthalMode):
    """``-i d/dphi`` on ``exp(i m phi)``: eigenvalue and the unchanged mode."""
    return mode.m, mode


def ladder_phi(mode: AzimuthalMode, sign) -> AzimuthalMode:
    return AzimuthalMode(mode.m + _sign(sign))


def shift_theta(g: AngularFunction, m: int, sign) -> AngularFunction:
    """``d-_{m} = -d/dtheta - m cot``  (P^m -> P^(m-1));
    ``d+_{m} = d/dtheta - (m-1) cot``  (P^(m-1) -> P^m)."""
    if g.is_zero:
        return g
    t = _term(g)
    if _sign(sign) < 0:
        return _combine(_scale(_d(t), -1), _cot(t, -m))
    return _combine(_d(t), _cot(t, -(m - 1)))


def ladder_theta(g: AngularFunction, ell: int, sign) -> AngularFunction:
    """``lambda+-_ell = +-sin(theta) d/dtheta + ell cos(theta)``."""
    if g.is_zero:
        return g
    t = _term(g)
    s = _sign(sign)
    return _combine(_sin(_d(t), 1, s), _cos(t, ell))


def apply_cl(g: AngularFunction, ell: int) -> AngularFunction:
    """``-sin^2 d2 - sin cos d - ell(ell+1) sin^2``; eigenvalue ``-m^2`` on P_ell^m."""
    if g.is_zero:
        return g
    t = _term(g)
    dt = _d(t)
    return _combine(
        _sin(_d(dt), 2, -1),
        _sin(_cos(dt), 1, -1),
        _sin(t, 2, -ell * (ell + 1)),
    )


def apply_l2m(g: AngularFunction, m: int) -> AngularFunction:
    """``-d2 - cot d + m^2 / sin^2``; eigenvalue ``ell(ell+1)`` on P_ell^m."""
    if g.is_zero:
        return g
    t = _term(g)
    dt = _d(t)
    return _combine(_scale(_d(dt), -1), _cot(dt, -1), _sin(t, -2, m * m))


def angular_symmetry(pair: AngularPair, sign) -> AngularPair:
    """``L+- = d+-_theta * exp(+-i phi)``: keeps ell, moves m by one.

    Raising uses ``d+_{m+1}``, lowering uses ``d-_{m}``; the boundary cases
    ``m = +-ell`` are annihilated by the operators themselves.
    """
    s = _sign(sign)
    new_m = pair.m + s
    if pair.is_zero:
        return AngularPair(AngularFunction.zero(), AzimuthalMode(new_m), pair.ell, new_m)
    if s > 0:
        theta = shift_theta(pair.theta, pair.m + 1, +1)
    else:
        theta = shift_theta(pair.theta, pair.m, -1)
    return AngularPair(theta.factored(), AzimuthalMode(new_m), pair.ell, new_m)


def build_spherical_harmonic(ell: int, m: int, normalize: bool = False) -> AngularPair:
    """Generate ``Y_ell^m`` from the constant seed.

    ``ell`` theta-ladder steps ``lambda+_1 ... lambda+_ell`` give ``P_ell^0``; ``|m|``
    applications of ``L+`` then raise m.  Negative m is the complex conjugate
    with mode ``-|m|``.  Without ``normalize`` the coefficients stay exact rationals.
    """
    if ell < 0 or abs(m) > ell:
        raise InvalidLabelError(f"need ell >= |m| >= 0, got ell={ell}, m={m}")
    g = AngularFunction(0, (Fraction(1),))
    for j in range(1, ell + 1):
        g = ladder_theta(g, j, +1)
    pair = AngularPair(g, AzimuthalMode(0), ell, 0)
    for _ in range(abs(m)):
        pair = angular_symmetry(pair, +1)
    theta = pair.theta.factored()
    if m < 0:
        theta = theta.conj()
    if normalize:
        norm = math.sqrt(2 * math.pi * theta.norm_sq())
        theta = AngularFunction(theta.a, tuple(complex(c) / norm for c in theta.coeffs))
    return AngularPair(theta, AzimuthalMode(m), ell, m)

