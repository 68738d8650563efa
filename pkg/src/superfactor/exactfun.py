"""Closed function classes for the separated eigenfunctions.

Radial functions are quasi-polynomials ``r**s * P(r) * exp(alpha*r + beta*r**2)``
and polar functions are ``sin(theta)**a * Q(cos(theta))``.  Every differential
operator used by the oscillator and Kepler-Coulomb constructions maps these
classes into themselves, so operator identities can be checked coefficient by
coefficient.

Coefficients given as ``int``/``Fraction`` (with rational ``alpha``, ``beta``)
keep the whole computation in exact rational arithmetic; anything else is
promoted to complex doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from . import _poly

__all__ = [
    "RepresentationError",
    "DivergenceError",
    "RadialFunction",
    "AngularFunction",
    "AzimuthalMode",
    "SeparatedState",
    "radial_derivative",
    "radial_mul_pow",
    "radial_scale_arg",
    "radial_proportional",
    "radial_norm_sq",
    "radial_residual",
    "angular_derivative",
    "angular_mul_cotan",
    "angular_proportional",
    "angular_residual",
]

#: relative size of a remainder still accepted as "exactly divisible" in float mode
DIVISIBILITY_RTOL = 1e-10


class RepresentationError(ValueError):
    """Result would leave the closed function class."""


class DivergenceError(ValueError):
    """Requested integral does not converge."""


def _exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _as_param(x):
    if _exact_scalar(x):
        return Fraction(x)
    if isinstance(x, complex):
        if x.imag != 0:
            raise ValueError("exponent coefficients must be real")
        x = x.real
    return float(x)


def _same(x, y, rtol: float = 1e-12) -> bool:
    if _exact_scalar(x) and _exact_scalar(y):
        return x == y
    return math.isclose(float(x), float(y), rel_tol=rtol, abs_tol=1e-300)


def _frac_str(x) -> object:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _parse_num(x):
    if isinstance(x, str):
        return Fraction(x)
    return x


# --------------------------------------------------------------------------- radial


@dataclass(frozen=True)
class RadialFunction:
    """``f(r) = r**s * sum_k coeffs[k] r**k * exp(alpha*r + beta*r**2)``, r > 0.

    The stored form is canonical: ``coeffs[0]`` and ``coeffs[-1]`` are nonzero
    (leading zeros are absorbed into ``s``) unless the function is identically
    zero, in which case ``coeffs == ()`` and ``s == 0``.
    """

    s: Fraction = Fraction(0)
    coeffs: tuple = (1,)
    alpha: Number = Fraction(0)
    beta: Number = Fraction(0)

    def __post_init__(self):
        coeffs = _poly.trim(_poly.coerce(self.coeffs))
        s = Fraction(self.s)
        lead = 0
        while lead < len(coeffs) and _poly.is_zero_coeff(coeffs[lead]):
            lead += 1
        coeffs = coeffs[lead:]
        s += lead
        if not coeffs:
            s = Fraction(0)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "alpha", _as_param(self.alpha))
        object.__setattr__(self, "beta", _as_param(self.beta))

    # construction helpers
    @classmethod
    def zero(cls, alpha=0, beta=0) -> "RadialFunction":
        return cls(0, (), alpha, beta)

    @classmethod
    def monomial(cls, power, coeff=1, alpha=0, beta=0) -> "RadialFunction":
        return cls(power, (coeff,), alpha, beta)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return (
            all(isinstance(c, Fraction) for c in self.coeffs)
            and isinstance(self.alpha, Fraction)
            and isinstance(self.beta, Fraction)
        )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    # arithmetic
    def _compatible(self, other: "RadialFunction") -> None:
        if not (_same(self.alpha, other.alpha) and _same(self.beta, other.beta)):
            raise RepresentationError(
                f"cannot add functions with exponents ({self.alpha}, {self.beta}) "
                f"and ({other.alpha}, {other.beta})"
            )
        if (self.s - other.s).denominator != 1:
            raise RepresentationError("powers of r differ by a non-integer")

    def __add__(self, other: "RadialFunction") -> "RadialFunction":
        if not isinstance(other, RadialFunction):
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        self._compatible(other)
        s0 = min(self.s, other.s)
        p = _poly.shift(self.coeffs, int(self.s - s0))
        q = _poly.shift(other.coeffs, int(other.s - s0))
        return RadialFunction(s0, _poly.add(p, q), self.alpha, self.beta)

    def __neg__(self) -> "RadialFunction":
        return RadialFunction(self.s, _poly.scale(self.coeffs, -1), self.alpha, self.beta)

    def __sub__(self, other: "RadialFunction") -> "RadialFunction":
        if not isinstance(other, RadialFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, RadialFunction) or not isinstance(c, Number):
            return NotImplemented
        return RadialFunction(self.s, _poly.scale(self.coeffs, c), self.alpha, self.beta)

    __rmul__ = __mul__

    def mul_pow(self, p) -> "RadialFunction":
        return radial_mul_pow(self, p)

    def mul_poly(self, poly: Sequence[Number]) -> "RadialFunction":
        """Multiply by the polynomial ``sum_k poly[k] r**k``."""
        if self.is_zero:
            return self
        return RadialFunction(self.s, _poly.mul(self.coeffs, poly), self.alpha, self.beta)

    def derivative(self) -> "RadialFunction":
        return radial_derivative(self)

    def scale_arg(self, lam) -> "RadialFunction":
        return radial_scale_arg(self, lam)

    def conj(self) -> "RadialFunction":
        if self.exact:
            return self
        return RadialFunction(self.s, tuple(c.conjugate() for c in self.coeffs), self.alpha, self.beta)

    def to_float(self) -> "RadialFunction":
        return RadialFunction(
            self.s, tuple(complex(c) for c in self.coeffs), float(self.alpha), float(self.beta)
        )

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if self.is_zero:
            return np.zeros_like(r, dtype=complex)
        poly = np.polynomial.polynomial.polyval(r, [complex(c) for c in self.coeffs])
        return r ** float(self.s) * poly * np.exp(float(self.alpha) * r + float(self.beta) * r * r)

    def norm_sq(self) -> float:
        return radial_norm_sq(self)

    def proportional(self, other: "RadialFunction", tol: float = 1e-12):
        return radial_proportional(self, other, tol)

    # serialization
    def to_json(self) -> dict:
        if self.exact:
            coeffs = [[_frac_str(c), 0] for c in self.coeffs]
            alpha, beta = _frac_str(self.alpha), _frac_str(self.beta)
        else:
            coeffs = [[complex(c).real, complex(c).imag] for c in self.coeffs]
            alpha, beta = float(self.alpha), float(self.beta)
        return {"s": _frac_str(self.s), "coeffs": coeffs, "alpha": alpha, "beta": beta}

    @classmethod
    def from_json(cls, data: dict) -> "RadialFunction":
        coeffs = []
        for re, im in data["coeffs"]:
            re, im = _parse_num(re), _parse_num(im)
            coeffs.append(re if im == 0 and _exact_scalar(re) else complex(re, im))
        return cls(
            Fraction(_parse_num(data["s"])),
            tuple(coeffs),
            _parse_num(data["alpha"]),
            _parse_num(data["beta"]),
        )


def radial_derivative(f: RadialFunction) -> RadialFunction:
    """Exact ``d/dr``.

    ``(r^s P e^E)' = r^(s-1) [s P + r P' + (alpha r + 2 beta r^2) P] e^E``.
    """
    if f.is_zero:
        return f
    p = f.coeffs
    q = _poly.add(_poly.scale(p, f.s), _poly.shift(_poly.deriv(p), 1))
    q = _poly.add(q, _poly.shift(_poly.scale(p, f.alpha), 1))
    q = _poly.add(q, _poly.shift(_poly.scale(p, 2 * f.beta), 2))
    return RadialFunction(f.s - 1, q, f.alpha, f.beta)


def radial_mul_pow(f: RadialFunction, p) -> RadialFunction:
    if f.is_zero:
        return f
    return RadialFunction(f.s + Fraction(p), f.coeffs, f.alpha, f.beta)


def radial_scale_arg(f: RadialFunction, lam) -> RadialFunction:
    """Return ``r -> f(lam * r)`` for ``lam > 0``."""
    if not lam > 0:
        raise ValueError("dilation factor must be positive")
    if _exact_scalar(lam):
        lam = Fraction(lam)
    if f.is_zero:
        return RadialFunction.zero(lam * f.alpha, lam * lam * f.beta)
    if f.s.denominator == 1:
        base = lam ** int(f.s)
    else:
        base = float(lam) ** float(f.s)
    coeffs = []
    factor = base
    for c in f.coeffs:
        coeffs.append(c * factor)
        factor = factor * lam
    return RadialFunction(f.s, tuple(coeffs), lam * f.alpha, lam * lam * f.beta)


def _aligned(f: RadialFunction, g: RadialFunction):
    s0 = min(f.s, g.s)
    if (f.s - g.s).denominator != 1:
        return None
    p = _poly.shift(f.coeffs, int(f.s - s0))
    q = _poly.shift(g.coeffs, int(g.s - s0))
    n = max(len(p), len(q))
    p = p + (0,) * (n - len(p))
    q = q + (0,) * (n - len(q))
    return p, q


def _ratio_of(p, q, tol: float):
    """Return c with p == c*q coefficientwise (relative tol), or None."""
    i = max(range(len(q)), key=lambda k: abs(q[k]))
    c = p[i] / q[i]
    scale = max(_poly.max_abs(p), abs(c) * _poly.max_abs(q))
    err = max(abs(a - c * b) for a, b in zip(p, q))
    if _exact_scalar(c) and all(_exact_scalar(x) for x in p + q):
        return c if err == 0 else None
    return c if err <= tol * scale else None


def radial_proportional(f: RadialFunction, g: RadialFunction, tol: float = 1e-12):
    """Ratio ``c`` with ``f == c * g``, or ``None`` if not proportional."""
    if f.is_zero:
        return 0
    if g.is_zero:
        return None
    if not (_same(f.alpha, g.alpha, tol) and _same(f.beta, g.beta, tol)):
        return None
    al = _aligned(f, g)
    if al is None:
        return None
    return _ratio_of(*al, tol)


def radial_residual(f: RadialFunction, g: RadialFunction) -> float:
    """Max coefficient difference relative to the larger function; 0.0 iff equal.

    Returns ``inf`` if the two functions have different exponential factors
    (they cannot agree as functions).
    """
    if f.is_zero and g.is_zero:
        return 0.0
    if f.is_zero or g.is_zero:
        return 1.0
    if not (_same(f.alpha, g.alpha) and _same(f.beta, g.beta)):
        return math.inf
    al = _aligned(f, g)
    if al is None:
        return math.inf
    p, q = al
    scale = max(_poly.max_abs(p), _poly.max_abs(q))
    return float(max(abs(a - b) for a, b in zip(p, q)) / scale)


def radial_norm_sq(f: RadialFunction) -> float:
    """``int_0^inf |f(r)|^2 r^2 dr`` (closed form when alpha or beta vanishes)."""
    if f.is_zero:
        return 0.0
    alpha, beta = float(f.alpha), float(f.beta)
    if not (beta < 0 or (beta == 0 and alpha < 0)):
        raise DivergenceError("function grows or does not decay at infinity")
    nu0 = 2 * float(f.s) + 2
    if nu0 <= -1:
        raise DivergenceError("integrand not integrable at r = 0")
    c = [complex(x) for x in f.coeffs]
    if beta == 0 or alpha == 0:
        total = 0.0
        for j, cj in enumerate(c):
            for k, ck in enumerate(c):
                w = (cj * ck.conjugate()).real
                if w == 0:
                    continue
                nu = nu0 + j + k
                if beta == 0:
                    lam = -2 * alpha
                    total += w * math.exp(math.lgamma(nu + 1) - (nu + 1) * math.log(lam))
                else:
                    lam = -2 * beta
                    total += w * 0.5 * math.exp(
                        math.lgamma((nu + 1) / 2) - (nu + 1) / 2 * math.log(lam)
                    )
        return total

    def integrand(r):
        return float(abs(f(r)) ** 2 * r * r)

    val, _ = integrate.quad(integrand, 0, np.inf, limit=200, epsabs=0, epsrel=1e-13)
    return val


# --------------------------------------------------------------------------- angular


def _settle(a: int, p: Sequence[Number]) -> "AngularFunction":
    """Bring ``sin^a * p(cos)`` with possibly negative ``a`` back to ``a >= 0``."""
    p = _poly.trim(_poly.coerce(p)) if p else ()
    if not p:
        return AngularFunction(0, ())
    while a < 0:
        q, rem = _poly.divmod_one_minus_x2(p)
        if not _negligible(rem, p):
            raise RepresentationError(
                "division by sin(theta) leaves the sin^a * poly(cos theta) class"
            )
        p = _poly.trim(q)
        a += 2
    return AngularFunction(a, p)


def _negligible(rem, ref) -> bool:
    if all(_exact_scalar(x) for x in rem):
        return all(x == 0 for x in rem)
    return _poly.max_abs(rem) <= DIVISIBILITY_RTOL * max(_poly.max_abs(ref), 1e-300)


def _lau_add(terms):
    """Sum of (a, poly) terms of equal sin-parity, as an unsettled (a, poly)."""
    terms = [(a, p) for a, p in terms if p and any(not _poly.is_zero_coeff(c) for c in p)]
    if not terms:
        return 0, ()
    parities = {a % 2 for a, _ in terms}
    if len(parities) > 1:
        raise RepresentationError("sum mixes odd and even powers of sin(theta)")
    a0 = min(a for a, _ in terms)
    out: tuple = ()
    for a, p in terms:
        out = _poly.add(out, _poly.mul(p, _poly.one_minus_x2_pow((a - a0) // 2)))
    return a0, out


def _lau_deriv(a: int, p):
    """``d/dtheta (sin^a p(u)) = sin^(a-1) [a u p - (1 - u^2) p']``."""
    if not p:
        return 0, ()
    t1 = _poly.shift(_poly.scale(p, a), 1)
    t2 = _poly.mul((-1, 0, 1), _poly.deriv(p))
    return a - 1, _poly.add(t1, t2)


@dataclass(frozen=True)
class AngularFunction:
    """``g(theta) = sin(theta)**a * sum_j coeffs[j] cos(theta)**j`` on (0, pi)."""

    a: int = 0
    coeffs: tuple = (1,)

    def __post_init__(self):
        if int(self.a) != self.a or self.a < 0:
            raise RepresentationError(f"sin power must be a non-negative integer, got {self.a}")
        coeffs = _poly.trim(_poly.coerce(self.coeffs)) if self.coeffs else ()
        object.__setattr__(self, "a", int(self.a) if coeffs else 0)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls) -> "AngularFunction":
        return cls(0, ())

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def __add__(self, other: "AngularFunction") -> "AngularFunction":
        if not isinstance(other, AngularFunction):
            return NotImplemented
        return _settle(*_lau_add([(self.a, self.coeffs), (other.a, other.coeffs)]))

    def __neg__(self):
        return AngularFunction(self.a, _poly.scale(self.coeffs, -1))

    def __sub__(self, other):
        if not isinstance(other, AngularFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, AngularFunction) or not isinstance(c, Number):
            return NotImplemented
        return AngularFunction(self.a, _poly.scale(self.coeffs, c))

    __rmul__ = __mul__

    def mul_cos(self, c=1) -> "AngularFunction":
        return AngularFunction(self.a, _poly.shift(_poly.scale(self.coeffs, c), 1))

    def mul_sin(self, k: int = 1) -> "AngularFunction":
        return _settle(self.a + k, self.coeffs)

    def derivative(self) -> "AngularFunction":
        return angular_derivative(self)

    def mul_cotan(self, c=1) -> "AngularFunction":
        return angular_mul_cotan(self, c)

    def conj(self) -> "AngularFunction":
        if self.exact:
            return self
        return AngularFunction(self.a, tuple(c.conjugate() for c in self.coeffs))

    def reduced(self) -> "AngularFunction":
        """Parity form: ``a in {0, 1}`` using ``sin^2 = 1 - cos^2``."""
        if self.is_zero or self.a < 2:
            return self
        j = self.a // 2
        return AngularFunction(self.a % 2, _poly.mul(self.coeffs, _poly.one_minus_x2_pow(j)))

    def factored(self) -> "AngularFunction":
        """Pull every ``(1 - cos^2)`` factor out of the polynomial into ``sin^a``."""
        if self.is_zero:
            return self
        a, p = self.a, self.coeffs
        while len(p) >= 3:
            q, rem = _poly.divmod_one_minus_x2(p)
            if not _negligible(rem, p):
                break
            a, p = a + 2, _poly.trim(q)
        return AngularFunction(a, p)

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.is_zero:
            return np.zeros_like(theta, dtype=complex)
        poly = np.polynomial.polynomial.polyval(np.cos(theta), [complex(c) for c in self.coeffs])
        return np.sin(theta) ** self.a * poly

    def norm_sq(self) -> float:
        """``int_0^pi |g|^2 sin(theta) d theta``, exactly via ``u = cos(theta)``."""
        if self.is_zero:
            return 0.0
        c = self.coeffs
        conj = [x.conjugate() if isinstance(x, complex) else x for x in c]
        sq = _poly.mul(_poly.mul(c, conj), _poly.one_minus_x2_pow(self.a))
        total = sum(
            (2 * x / (k + 1) for k, x in enumerate(sq) if k % 2 == 0),
            Fraction(0) if self.exact else 0.0,
        )
        return float(complex(total).real) if not self.exact else float(total)

    def proportional(self, other: "AngularFunction", tol: float = 1e-12):
        return angular_proportional(self, other, tol)

    def to_json(self) -> dict:
        if self.exact:
            coeffs = [[_frac_str(c), 0] for c in self.coeffs]
        else:
            coeffs = [[complex(c).real, complex(c).imag] for c in self.coeffs]
        return {"a": self.a, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "AngularFunction":
        coeffs = []
        for re, im in data["coeffs"]:
            re, im = _parse_num(re), _parse_num(im)
            coeffs.append(re if im == 0 and _exact_scalar(re) else complex(re, im))
        return cls(int(data["a"]), tuple(coeffs))


def angular_derivative(g: AngularFunction) -> AngularFunction:
    if g.is_zero:
        return g
    return _settle(*_lau_deriv(g.a, g.coeffs))


def angular_mul_cotan(g: AngularFunction, c=1) -> AngularFunction:
    """``c * cot(theta) * g``; fails unless the division by sin is exact."""
    if g.is_zero:
        return g
    return _settle(g.a - 1, _poly.shift(_poly.scale(g.coeffs, c), 1))


def _parity_pair(g1: AngularFunction, g2: AngularFunction):
    r1, r2 = g1.reduced(), g2.reduced()
    if r1.a != r2.a:
        return None
    p, q = r1.coeffs, r2.coeffs
    n = max(len(p), len(q))
    return p + (0,) * (n - len(p)), q + (0,) * (n - len(q))


def angular_proportional(g1: AngularFunction, g2: AngularFunction, tol: float = 1e-12):
    if g1.is_zero:
        return 0
    if g2.is_zero:
        return None
    pair = _parity_pair(g1, g2)
    if pair is None:
        return None
    return _ratio_of(*pair, tol)


def angular_residual(g1: AngularFunction, g2: AngularFunction) -> float:
    if g1.is_zero and g2.is_zero:
        return 0.0
    if g1.is_zero or g2.is_zero:
        return 1.0
    pair = _parity_pair(g1, g2)
    if pair is None:
        return math.inf
    p, q = pair
    scale = max(_poly.max_abs(p), _poly.max_abs(q))
    return float(max(abs(a - b) for a, b in zip(p, q)) / scale)


# --------------------------------------------------------------------------- modes / states


@dataclass(frozen=True)
class AzimuthalMode:
    """``exp(i m phi)``."""

    m: int

    def __post_init__(self):
        if int(self.m) != self.m:
            raise ValueError("azimuthal number must be an integer")
        object.__setattr__(self, "m", int(self.m))

    def __call__(self, phi):
        return np.exp(1j * self.m * np.asarray(phi, dtype=float))

    def to_json(self) -> dict:
        return {"m": self.m}

    @classmethod
    def from_json(cls, data: dict) -> "AzimuthalMode":
        return cls(int(data["m"]))


@dataclass(frozen=True)
class SeparatedState:
    """``R(r) * P(theta) * exp(i m phi)`` labelled by quantum numbers (n, ell, m).

    A state whose radial or polar factor vanishes is the zero state; labels of
    a zero state are informational only and are not validated.
    """

    radial: RadialFunction
    angular: AngularFunction
    azimuthal: AzimuthalMode
    n: int
    ell: int
    m: int
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.is_zero:
            return
        if self.azimuthal.m != self.m:
            raise ValueError("azimuthal mode does not match label m")
        if not (self.n >= self.ell >= abs(self.m) >= 0):
            raise ValueError(f"invalid labels n={self.n}, ell={self.ell}, m={self.m}")

    @property
    def is_zero(self) -> bool:
        return self.radial.is_zero or self.angular.is_zero

    @classmethod
    def zero(cls, n: int, ell: int, m: int) -> "SeparatedState":
        return cls(RadialFunction.zero(), AngularFunction.zero(), AzimuthalMode(m), n, ell, m)

    @property
    def labels(self) -> tuple:
        return (self.n, self.ell, self.m)

    def __call__(self, r, theta, phi):
        return self.radial(r) * self.angular(theta) * self.azimuthal(phi)

    def normalized(self) -> "SeparatedState":
        """Float copy with unit radial norm and unit norm of the angular pair."""
        if self.is_zero:
            return self
        rad = self.radial.to_float()
        rad = rad * (1 / math.sqrt(radial_norm_sq(rad)))
        ang = AngularFunction(self.angular.a, tuple(complex(c) for c in self.angular.coeffs))
        ang = ang * (1 / math.sqrt(2 * math.pi * ang.norm_sq()))
        return SeparatedState(rad, ang, self.azimuthal, self.n, self.ell, self.m)

    def to_json(self) -> dict:
        return {
            "labels": {"n": self.n, "ell": self.ell, "m": self.m},
            "zero": self.is_zero,
            "radial": self.radial.to_json(),
            "angular": self.angular.to_json(),
            "azimuthal": self.azimuthal.to_json(),
        }


def states_proportional(a: SeparatedState, b: SeparatedState, tol: float = 1e-10) -> Optional[complex]:
    """Ratio of two separated states, or None (labels and modes must match)."""
    if a.is_zero:
        return 0
    if b.is_zero or a.azimuthal != b.azimuthal:
        return None
    cr = radial_proportional(a.radial, b.radial, tol)
    ca = angular_proportional(a.angular, b.angular, tol)
    if cr is None or ca is None:
        return None
    return cr * ca
