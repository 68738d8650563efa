"""Small combinators for linear differential operators on RadialFunction."""

from __future__ import annotations

from fractions import Fraction
from numbers import Number

from .exactfun import RadialFunction, radial_derivative, radial_mul_pow


def num(x):
    """Keep ints/Fractions exact, everything else becomes float."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    return float(x)


def ratio(a, b):
    """a / b, exact when both are exact."""
    a, b = num(a), num(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a / b
    return float(a) / float(b)


def total(*terms: RadialFunction) -> RadialFunction:
    out = RadialFunction.zero()
    for t in terms:
        out = out + t
    return out


def first_order(f: RadialFunction, d: Number = 0, inv_r: Number = 0, const: Number = 0, r: Number = 0):
    """``d f' + inv_r f / r + const f + r * r_coeff f``."""
    if f.is_zero:
        return f
    terms = []
    if d:
        terms.append(radial_derivative(f) * d)
    if inv_r:
        terms.append(radial_mul_pow(f, -1) * inv_r)
    if const:
        terms.append(f * const)
    if r:
        terms.append(radial_mul_pow(f, 1) * r)
    return total(*terms)


def laplacian_part(f: RadialFunction, ell: int) -> RadialFunction:
    """``-f'' - 2 f'/r + ell(ell+1) f / r^2``."""
    if f.is_zero:
        return f
    d1 = radial_derivative(f)
    d2 = radial_derivative(d1)
    return total(d2 * -1, radial_mul_pow(d1, -1) * -2, radial_mul_pow(f, -2) * (ell * (ell + 1)))
