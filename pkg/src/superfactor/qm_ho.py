"""Radial isotropic oscillator ``V = omega^2 r^2 / 4`` (hbar = 2m = 1).

Index conventions (all verified as operator identities in the test suite)::

    a+_l = -d + (l-1)/r + w r/2      a-_l = d + (l+1)/r + w r/2
    b+_l = -d + (l-1)/r - w r/2      b-_l = d + (l+1)/r - w r/2
    H_l  = a+_l a-_l - (w/2)(2l-1) = b-_{l+1} b+_{l+1} + (w/2)(2l+3)

    shift  (l -> l+2):  b+_{l+2} a+_{l+1}      (l -> l-2):  b-_{l-1} a-_l
    ladder (n -> n+2):  b-_{l+1} a+_{l+1}      (n -> n-2):  b+_l a-_l

so ``shift_r`` and ``ladder_r`` always take the ell of the function they act on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

from . import qm_angular
from ._radops import first_order, laplacian_part, num, total
from .exactfun import (
    AzimuthalMode,
    RadialFunction,
    SeparatedState,
    radial_mul_pow,
)
from .qm_angular import InvalidLabelError, _sign

__all__ = [
    "HoParams",
    "apply_hl",
    "apply_a",
    "apply_b",
    "shift_r",
    "ladder_r",
    "energy",
    "build_state",
    "symmetry_s",
    "seed",
]


@dataclass(frozen=True)
class HoParams:
    omega: Number = 1

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        object.__setattr__(self, "omega", num(self.omega))

    @property
    def exact(self) -> bool:
        return isinstance(self.omega, Fraction)


def apply_hl(f: RadialFunction, ell: int, p: HoParams) -> RadialFunction:
    """``-f'' - 2f'/r + l(l+1) f/r^2 + (w^2/4) r^2 f``."""
    if f.is_zero:
        return f
    w = p.omega
    return total(laplacian_part(f, ell), radial_mul_pow(f, 2) * (w * w / 4))


def apply_a(f: RadialFunction, ell: int, p: HoParams, sign) -> RadialFunction:
    s = _sign(sign)
    if s > 0:
        return first_order(f, d=-1, inv_r=ell - 1, r=p.omega / 2)
    return first_order(f, d=1, inv_r=ell + 1, r=p.omega / 2)


def apply_b(f: RadialFunction, ell: int, p: HoParams, sign) -> RadialFunction:
    s = _sign(sign)
    if s > 0:
        return first_order(f, d=-1, inv_r=ell - 1, r=-p.omega / 2)
    return first_order(f, d=1, inv_r=ell + 1, r=-p.omega / 2)


def shift_r(f: RadialFunction, ell: int, p: HoParams, sign) -> RadialFunction:
    """Second-order shift on a function at angular label ``ell``: ell -> ell +- 2."""
    if _sign(sign) > 0:
        return apply_b(apply_a(f, ell + 1, p, +1), ell + 2, p, +1)
    return apply_b(apply_a(f, ell, p, -1), ell - 1, p, -1)


def ladder_r(f: RadialFunction, ell: int, p: HoParams, sign) -> RadialFunction:
    """Second-order ladder at fixed ``ell``: n -> n +- 2, ``[H_l, L+-] = +-2w L+-``."""
    if _sign(sign) > 0:
        return apply_b(apply_a(f, ell + 1, p, +1), ell + 1, p, -1)
    return apply_b(apply_a(f, ell, p, -1), ell, p, +1)


def energy(n: int, p: HoParams):
    if n < 0:
        raise InvalidLabelError("n must be non-negative")
    return p.omega * (2 * n + 3) / 2


def seed(parity: int, p: HoParams) -> RadialFunction:
    """Lattice roots: ``exp(-w r^2/4)`` (ell = 0) or ``r exp(-w r^2/4)`` (ell = 1).

    Both are the solutions of ``b+_{l+1} R = 0`` with ``a-`` also lowering to zero
    ladder-wise, i.e. the minimal states ``n = ell`` of each parity sector.
    """
    one = Fraction(1) if p.exact else 1.0
    return RadialFunction(parity, (one,), 0, -p.omega / 4)


def _check_labels(n: int, ell: int, m: int) -> None:
    if not (n >= ell >= abs(m) >= 0):
        raise InvalidLabelError(f"need n >= ell >= |m| >= 0, got ({n}, {ell}, {m})")
    if (n - ell) % 2:
        raise InvalidLabelError(f"n - ell must be even for the oscillator, got ({n}, {ell})")


def symmetry_s(state: SeparatedState, p: HoParams, sign) -> SeparatedState:
    """``S+ = shift+ lambda+_{l+2} lambda+_{l+1}`` and ``S- = shift- lambda-_{l-1} lambda-_l``.

    Energy is unchanged; ell moves by two.  The polar factor is computed first so
    that states with no partner (ell < 2, |m| > ell - 2) come out as the zero state
    without touching the radial operator at the lattice edge.
    """
    s = _sign(sign)
    n, ell, m = state.labels
    new_ell = ell + 2 * s
    if state.is_zero or new_ell < 0:
        return SeparatedState.zero(n, max(new_ell, 0), m)
    if s > 0:
        ang = qm_angular.ladder_theta(state.angular, ell + 1, +1)
        ang = qm_angular.ladder_theta(ang, ell + 2, +1)
    else:
        ang = qm_angular.ladder_theta(state.angular, ell, -1)
        ang = qm_angular.ladder_theta(ang, ell - 1, -1)
    if ang.is_zero:
        return SeparatedState.zero(n, new_ell, m)
    rad = shift_r(state.radial, ell, p, s)
    if rad.is_zero:
        return SeparatedState.zero(n, new_ell, m)
    return SeparatedState(rad, ang.factored(), state.azimuthal, n, new_ell, m)


def build_state(n: int, ell: int, m: int, p: HoParams, normalize: bool = True) -> SeparatedState:
    """Generate ``Psi_{n,l,m}`` from the parity seed by ladder, symmetry and L+ chains.

    ``(l0, l0) --ladder+^k--> (n, l0) --S+^j--> (n, l) --L+^|m|--> (n, l, m)``
    with ``l0 = l mod 2``.  With ``normalize=False`` and a rational omega the
    coefficients are exact rationals.
    """
    _check_labels(n, ell, m)
    l0 = ell % 2
    rad = seed(l0, p)
    for _ in range((n - l0) // 2):
        rad = ladder_r(rad, l0, p, +1)
    ang = qm_angular.build_spherical_harmonic(l0, 0).theta
    state = SeparatedState(rad, ang, AzimuthalMode(0), n, l0, 0)
    for _ in range((ell - l0) // 2):
        state = symmetry_s(state, p, +1)
    pair = qm_angular.AngularPair(state.angular, AzimuthalMode(0), ell, 0)
    for _ in range(abs(m)):
        pair = qm_angular.angular_symmetry(pair, +1)
    theta = pair.theta.factored()
    if m < 0:
        theta = theta.conj()
    state = SeparatedState(state.radial, theta, AzimuthalMode(m), n, ell, m)
    return state.normalized() if normalize else state
