"""Radial Kepler-Coulomb problem ``V = -k/r`` (hbar = 2m = 1), bound states.

Shift operators at fixed energy::

    d+_{l+1} = -d + l/r - k/(2(l+1))        (R_n^l -> R_n^(l+1))
    d-_l     =  d + (l+1)/r - k/(2l)         (R_n^l -> R_n^(l-1)),  l >= 1
    H_l = d-_{l+1} d+_{l+1} - k^2/(4(l+1)^2)

Ladder operators act on the r^2-multiplied equation
``h_n = -r^2 d^2 - 2r d - r^2 E_n - k r`` (eigenvalue ``-l(l+1)``) and use the exact
dilation ``D_n f(r) = f(r (n+1)/n)``::

    L+_n = (-r d + c r - (n+1)) D_n^{-1}     psi^(n-1) -> psi^n
    L-_n = D_n (r d + c r - n)                psi^n -> psi^(n-1),   c = k/(2(n+1))

with ``h_n = L+_n L-_n - n(n+1) = L-_{n+1} L+_{n+1} - (n+1)(n+2)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

from . import qm_angular
from ._radops import first_order, laplacian_part, num, ratio, total
from .exactfun import (
    AngularFunction,
    AzimuthalMode,
    RadialFunction,
    SeparatedState,
    radial_derivative,
    radial_mul_pow,
    radial_scale_arg,
)
from .qm_angular import InvalidLabelError, _sign

__all__ = [
    "KcParams",
    "ParameterError",
    "apply_hl",
    "shift_r",
    "apply_hhat",
    "apply_dilation",
    "ladder_r",
    "energy",
    "build_state",
    "symmetry_s",
    "enumerate_level",
    "seed",
]


class ParameterError(ValueError):
    """Operator index outside its domain of definition."""


@dataclass(frozen=True)
class KcParams:
    k: Number = 1

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("k must be positive")
        object.__setattr__(self, "k", num(self.k))

    @property
    def exact(self) -> bool:
        return isinstance(self.k, Fraction)


def energy(n: int, p: KcParams):
    if n < 0:
        raise InvalidLabelError("n must be non-negative")
    return -ratio(p.k * p.k, 4 * (n + 1) ** 2)


def apply_hl(f: RadialFunction, ell: int, p: KcParams) -> RadialFunction:
    """``-f'' - 2f'/r + l(l+1) f/r^2 - k f/r``."""
    if f.is_zero:
        return f
    return total(laplacian_part(f, ell), radial_mul_pow(f, -1) * (-p.k))


def shift_r(f: RadialFunction, ell: int, p: KcParams, sign) -> RadialFunction:
    """``d+_{l+1}`` (sign +) or ``d-_l`` (sign -) on a function at label ``ell``."""
    if _sign(sign) > 0:
        return first_order(f, d=-1, inv_r=ell, const=-ratio(p.k, 2 * (ell + 1)))
    if ell < 1:
        raise ParameterError("lowering shift d-_l needs l >= 1")
    return first_order(f, d=1, inv_r=ell + 1, const=-ratio(p.k, 2 * ell))


def apply_hhat(f: RadialFunction, n: int, p: KcParams) -> RadialFunction:
    """``-r^2 f'' - 2 r f' - r^2 E_n f - k r f``."""
    if f.is_zero:
        return f
    d1 = radial_derivative(f)
    d2 = radial_derivative(d1)
    return total(
        radial_mul_pow(d2, 2) * -1,
        radial_mul_pow(d1, 1) * -2,
        radial_mul_pow(f, 2) * (-energy(n, p)),
        radial_mul_pow(f, 1) * (-p.k),
    )


def _lam(n: int):
    if n < 1:
        raise ParameterError("dilation D_n needs n >= 1")
    return Fraction(n + 1, n)


def apply_dilation(f: RadialFunction, n: int, inverse: bool = False) -> RadialFunction:
    """``f(r) -> f(lam r)`` with ``lam = (n+1)/n`` (or its inverse)."""
    lam = _lam(n)
    return radial_scale_arg(f, 1 / lam if inverse else lam)


def _rd(f: RadialFunction, d_coeff, r_coeff, const) -> RadialFunction:
    """``d_coeff r f' + r_coeff r f + const f``."""
    if f.is_zero:
        return f
    return total(
        radial_mul_pow(radial_derivative(f), 1) * d_coeff,
        radial_mul_pow(f, 1) * r_coeff,
        f * const,
    )


def ladder_r(f: RadialFunction, n: int, p: KcParams, sign) -> RadialFunction:
    """``L+_n`` (psi^(n-1) -> psi^n) or ``L-_n`` (psi^n -> psi^(n-1)).

    ``n`` is the label of the upper state.  For ``L-_0`` the dilation is undefined;
    the inner factor ``r d + c r`` is evaluated first and only a vanishing result
    (the ground-state annihilation) is accepted.
    """
    c = ratio(p.k, 2 * (n + 1))
    if _sign(sign) > 0:
        return _rd(apply_dilation(f, n, inverse=True), -1, c, -(n + 1))
    inner = _rd(f, 1, c, -n)
    if n == 0:
        if inner.is_zero:
            return inner
        raise ParameterError("L-_0 applied to a function it does not annihilate")
    return apply_dilation(inner, n)


def _check_labels(n: int, ell: int, m: int) -> None:
    if not (n >= ell >= abs(m) >= 0):
        raise InvalidLabelError(f"need n >= ell >= |m| >= 0, got ({n}, {ell}, {m})")


def seed(p: KcParams) -> RadialFunction:
    one = Fraction(1) if p.exact else 1.0
    return RadialFunction(0, (one,), -p.k / 2, 0)


def symmetry_s(state: SeparatedState, p: KcParams, sign) -> SeparatedState:
    """``S+ = d+_{l+1} lambda+_{l+1}``, ``S- = d-_l lambda-_l``: ell -> ell +- 1 at fixed E."""
    s = _sign(sign)
    n, ell, m = state.labels
    new_ell = ell + s
    if state.is_zero or new_ell < 0:
        return SeparatedState.zero(n, max(new_ell, 0), m)
    if s > 0:
        ang = qm_angular.ladder_theta(state.angular, ell + 1, +1)
    else:
        ang = qm_angular.ladder_theta(state.angular, ell, -1)
    if ang.is_zero:
        return SeparatedState.zero(n, new_ell, m)
    rad = shift_r(state.radial, ell, p, s)
    if rad.is_zero:
        return SeparatedState.zero(n, new_ell, m)
    return SeparatedState(rad, ang.factored(), state.azimuthal, n, new_ell, m)


def build_state(n: int, ell: int, m: int, p: KcParams, normalize: bool = True) -> SeparatedState:
    """``Psi_{n,l,m} = (L+)^|m| S+^l L+_n ... L+_1 Psi_0``, unit norm unless ``normalize=False``."""
    _check_labels(n, ell, m)
    rad = seed(p)
    for j in range(1, n + 1):
        rad = ladder_r(rad, j, p, +1)
    one = AngularFunction(0, (Fraction(1),))
    state = SeparatedState(rad, one, AzimuthalMode(0), n, 0, 0)
    for _ in range(ell):
        state = symmetry_s(state, p, +1)
    pair = qm_angular.AngularPair(state.angular, AzimuthalMode(0), ell, 0)
    for _ in range(abs(m)):
        pair = qm_angular.angular_symmetry(pair, +1)
    theta = pair.theta.factored()
    if m < 0:
        theta = theta.conj()
    state = SeparatedState(state.radial, theta, AzimuthalMode(m), n, ell, m)
    return state.normalized() if normalize else state


def enumerate_level(n: int, p: KcParams) -> list[SeparatedState]:
    """All nonzero states of level n reachable from ``Psi_{n,0,0}`` by S+- and L+-.

    Breadth-first search over the generated states; labels are only used to
    avoid revisiting, never to decide whether a state exists.  That decision
    needs exact zeros, so float parameters are replaced by their exact rational
    value and the returned states are exact.
    """
    if not p.exact:
        p = KcParams(Fraction(p.k))
    rad = seed(p)
    for j in range(1, n + 1):
        rad = ladder_r(rad, j, p, +1)
    start = SeparatedState(rad, AngularFunction(0, (Fraction(1),)), AzimuthalMode(0), n, 0, 0)
    found = {start.labels: start}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        moves = [symmetry_s(st, p, +1), symmetry_s(st, p, -1)]
        for s in (+1, -1):
            pair = qm_angular.angular_symmetry(
                qm_angular.AngularPair(st.angular, st.azimuthal, st.ell, st.m), s
            )
            if pair.is_zero:
                continue
            moves.append(SeparatedState(st.radial, pair.theta, pair.mode, n, st.ell, pair.m))
        for nxt in moves:
            if nxt.is_zero or nxt.labels in found:
                continue
            found[nxt.labels] = nxt
            queue.append(nxt)
    return [found[key] for key in sorted(found)]
