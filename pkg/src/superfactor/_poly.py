"""Dense univariate polynomial helpers on coefficient tuples (lowest degree first).

Coefficients may be Fractions (exact) or complex/float; nothing here assumes a
particular numeric type beyond ``+``, ``*`` and ``==``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Sequence

Coeffs = tuple

#: absolute floor below which float coefficients are treated as structural zeros
ZERO_FLOOR = 1e-300


def is_exact(c: Number) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def coerce(coeffs: Sequence[Number]) -> Coeffs:
    """Promote to a homogeneous tuple: all Fraction, or all complex."""
    if all(is_exact(c) for c in coeffs):
        return tuple(Fraction(c) for c in coeffs)
    return tuple(complex(c) for c in coeffs)


def is_zero_coeff(c: Number) -> bool:
    if is_exact(c):
        return c == 0
    return abs(c) < ZERO_FLOOR


def trim(p: Sequence[Number]) -> Coeffs:
    """Drop trailing (highest-degree) zeros."""
    p = list(p)
    while p and is_zero_coeff(p[-1]):
        p.pop()
    return tuple(p)


def add(p: Sequence[Number], q: Sequence[Number]) -> Coeffs:
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else 0
        b = q[i] if i < len(q) else 0
        out.append(a + b)
    return tuple(out)


def scale(p: Sequence[Number], c: Number) -> Coeffs:
    return tuple(c * x for x in p)


def shift(p: Sequence[Number], k: int) -> Coeffs:
    """Multiply by x**k, k >= 0."""
    if k < 0:
        raise ValueError("negative shift")
    if not p:
        return ()
    return (0,) * k + tuple(p)


def mul(p: Sequence[Number], q: Sequence[Number]) -> Coeffs:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def deriv(p: Sequence[Number]) -> Coeffs:
    return tuple(k * p[k] for k in range(1, len(p)))


def divmod_one_minus_x2(p: Sequence[Number]) -> tuple[Coeffs, Coeffs]:
    """Divide by (1 - x**2); returns (quotient, remainder) with deg(remainder) < 2."""
    rem = list(p)
    n = len(rem)
    if n < 3:
        return (), tuple(rem)
    quot = [0] * (n - 2)
    # (1 - x^2) has leading coefficient -1
    for k in range(n - 1, 1, -1):
        c = -rem[k]
        quot[k - 2] = c
        rem[k] = 0
        rem[k - 2] -= c
    return tuple(quot), tuple(rem[:2])


def one_minus_x2_pow(j: int) -> Coeffs:
    out: Coeffs = (1,)
    for _ in range(j):
        out = mul(out, (1, 0, -1))
    return out


def max_abs(p: Sequence[Number]) -> float:
    return max((abs(c) for c in p), default=0.0)
