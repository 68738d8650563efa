"""Verification reports and the quantum suites (operator identities, spectra, harmonics).

Every identity is checked as an action on sample functions: both sides are
applied to the same input and compared coefficient-wise.  With rational
parameters and rational samples the comparison is exact, so a correct
identity has residual exactly 0.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import sympy as sp

from . import qm_angular as qa
from . import qm_ho, qm_kc
from ._radops import num
from .exactfun import (
    AngularFunction,
    RadialFunction,
    angular_proportional,
    angular_residual,
    radial_residual,
)

__all__ = [
    "Check",
    "VerificationReport",
    "DEFAULT_TOL",
    "quantum_identity_suite",
    "ho_spectrum",
    "kc_spectrum",
    "harmonics_report",
    "legendre_oracle",
    "random_radial",
    "random_angular",
]

SCHEMA = "1"
DEFAULT_TOL = 1e-10


@dataclass
class Check:
    name: str
    group: str
    residual: float
    tolerance: float
    samples: int = 1
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.residual) and self.residual <= self.tolerance)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "group": self.group,
            "residual": self.residual if math.isfinite(self.residual) else str(self.residual),
            "tolerance": self.tolerance,
            "samples": self.samples,
            "passed": self.passed,
            **({"note": self.note} if self.note else {}),
        }

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.group:<10} {self.name:<58} {self.residual:.3e} <= {self.tolerance:.0e}"


@dataclass
class VerificationReport:
    suite: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def worst(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failed": len(self.failures),
            "checks": [c.to_json() for c in self.checks],
        }

    def lines(self) -> list:
        return [c.line() for c in self.checks]


class _Acc:
    """Max-residual accumulator for one named identity."""

    def __init__(self, name: str, group: str, tol: float, note: str = ""):
        self.name, self.group, self.tol, self.note = name, group, tol, note
        self.worst = 0.0
        self.count = 0

    def radial(self, lhs: RadialFunction, rhs: RadialFunction) -> None:
        self.worst = max(self.worst, radial_residual(lhs, rhs))
        self.count += 1

    def angular(self, lhs: AngularFunction, rhs: AngularFunction) -> None:
        self.worst = max(self.worst, angular_residual(lhs, rhs))
        self.count += 1

    def check(self) -> Check:
        return Check(self.name, self.group, self.worst, self.tol, self.count, self.note)


# --------------------------------------------------------------------------- samples


def _frac(rng: random.Random) -> Fraction:
    while True:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if c:
            return c


def random_radial(rng: random.Random, alpha=0, beta=0, exact: bool = True, max_deg: int = 4) -> RadialFunction:
    """``r^s * poly(r) * exp(alpha r + beta r^2)`` with small rational coefficients."""
    s = rng.randint(0, 2)
    coeffs = tuple(_frac(rng) for _ in range(rng.randint(1, max_deg + 1)))
    f = RadialFunction(s, coeffs, alpha, beta)
    return f if exact else f.to_float()


def random_angular(rng: random.Random, a: int, exact: bool = True, max_deg: int = 4) -> AngularFunction:
    coeffs = tuple(_frac(rng) for _ in range(rng.randint(1, max_deg + 1)))
    if not exact:
        coeffs = tuple(float(c) for c in coeffs)
    return AngularFunction(a, coeffs)


def _lin(*pairs) -> RadialFunction:
    """Linear combination ``sum c_i f_i`` of radial functions."""
    out = None
    for c, f in pairs:
        term = f * c
        out = term if out is None else out + term
    return out


def _alin(*pairs) -> AngularFunction:
    out = None
    for c, g in pairs:
        term = g * c
        out = term if out is None else out + term
    return out


# --------------------------------------------------------------------------- angular identities


def _angular_identities(rng, n, exact, tol) -> list:
    L2, sh, lad, C = qa.apply_l2m, qa.shift_theta, qa.ladder_theta, qa.apply_cl
    inter_up = _Acc("L2_m d+_m = d+_m L2_(m-1)", "angular", tol)
    inter_dn = _Acc("d-_m L2_m = L2_(m-1) d-_m", "angular", tol)
    fact = _Acc("d-_m d+_m = L2_(m-1) - m(m-1)", "angular", tol)
    cfac = _Acc("C_l = lambda+_l lambda-_l - l^2", "angular", tol)
    c_dn = _Acc("lambda-_l C_l = C_(l-1) lambda-_l", "angular", tol)
    c_up = _Acc("lambda+_l C_(l-1) = C_l lambda+_l", "angular", tol)
    for _ in range(n):
        m = rng.randint(1, 4)
        g = random_angular(rng, m - 1, exact)
        inter_up.angular(L2(sh(g, m, +1), m), sh(L2(g, m - 1), m, +1))
        fact.angular(sh(sh(g, m, +1), m, -1), _alin((1, L2(g, m - 1)), (-m * (m - 1), g)))
        h = random_angular(rng, m, exact)
        inter_dn.angular(sh(L2(h, m), m, -1), L2(sh(h, m, -1), m - 1))
        ell = rng.randint(1, 5)
        u = random_angular(rng, rng.randint(0, 3), exact)
        cfac.angular(C(u, ell), _alin((1, lad(lad(u, ell, -1), ell, +1)), (-ell * ell, u)))
        c_dn.angular(lad(C(u, ell), ell, -1), C(lad(u, ell, -1), ell - 1))
        c_up.angular(lad(C(u, ell - 1), ell, +1), C(lad(u, ell, +1), ell))
    return [a.check() for a in (inter_up, inter_dn, fact, cfac, c_dn, c_up)]


def _angular_eigen_checks(lmax: int, tol: float) -> list:
    """Substituted lambda commutators and the boundary annihilations on P_l^m."""
    comm = _Acc("[L2_m, lambda+-_l] = +-2l lambda+- on eigenfunctions", "angular", tol)
    ann = _Acc("lambda-_l P_l^l = 0, d+_(l+1) P_l^l = 0, d-_(-l) P_l^-l = 0", "angular", tol)
    for ell in range(0, lmax + 1):
        for m in range(0, ell + 1):
            P = qa.build_spherical_harmonic(ell, m).theta
            up = qa.ladder_theta(P, ell + 1, +1)  # P_l -> P_(l+1), label l+1
            lhs = _alin((1, qa.apply_l2m(up, m)), (-ell * (ell + 1), up))
            comm.angular(lhs, up * (2 * (ell + 1)))
            if ell > m:
                dn = qa.ladder_theta(P, ell, -1)
                lhs = _alin((1, qa.apply_l2m(dn, m)), (-ell * (ell + 1), dn))
                comm.angular(lhs, dn * (-2 * ell))
        top = qa.build_spherical_harmonic(ell, ell).theta
        zero = AngularFunction.zero()
        ann.angular(qa.ladder_theta(top, ell, -1), zero)
        ann.angular(qa.shift_theta(top, ell + 1, +1), zero)
        ann.angular(qa.shift_theta(qa.build_spherical_harmonic(ell, -ell).theta, -ell, -1), zero)
    return [comm.check(), ann.check()]


# --------------------------------------------------------------------------- oscillator identities


def _ho_identities(rng, n, p: qm_ho.HoParams, exact, tol) -> list:
    w = p.omega
    H = lambda f, l: qm_ho.apply_hl(f, l, p)  # noqa: E731
    A = lambda f, l, s: qm_ho.apply_a(f, l, p, s)  # noqa: E731
    B = lambda f, l, s: qm_ho.apply_b(f, l, p, s)  # noqa: E731
    acc = {
        k: _Acc(k, "ho", tol)
        for k in (
            "H_l = a+_l a-_l - (w/2)(2l-1)",
            "H_l = b-_(l+1) b+_(l+1) + (w/2)(2l+3)",
            "a-_(l+1) a+_(l+1) - a+_l a-_l = 2w",
            "b-_(l+1) b+_(l+1) - b+_l b-_l = -2w",
            "a-_l H_l = (H_(l-1) + w) a-_l",
            "a+_(l+1) H_l = (H_(l+1) - w) a+_(l+1)",
            "b-_l H_l = (H_(l-1) - w) b-_l",
            "b+_(l+1) H_l = (H_(l+1) + w) b+_(l+1)",
            "Delta-_l H_l = H_(l-2) Delta-_l",
            "Delta+_(l+2) H_l = H_(l+2) Delta+_(l+2)",
            "Lambda-_l H_l = (H_l + 2w) Lambda-_l",
            "[H_l, Lambda+-_l] = +-2w Lambda+-_l",
        )
    }
    keys = list(acc)
    betas = [-w / 4, -w / 2, Fraction(-1, 3) if exact else -1 / 3]
    for _ in range(n):
        ell = rng.randint(2, 5)
        f = random_radial(rng, 0, rng.choice(betas), exact)
        hf = H(f, ell)
        acc[keys[0]].radial(hf, _lin((1, A(A(f, ell, -1), ell, +1)), (-w * (2 * ell - 1) / 2, f)))
        acc[keys[1]].radial(hf, _lin((1, B(B(f, ell + 1, +1), ell + 1, -1)), (w * (2 * ell + 3) / 2, f)))
        acc[keys[2]].radial(
            _lin((1, A(A(f, ell + 1, +1), ell + 1, -1)), (-1, A(A(f, ell, -1), ell, +1))), f * (2 * w)
        )
        acc[keys[3]].radial(
            _lin((1, B(B(f, ell + 1, +1), ell + 1, -1)), (-1, B(B(f, ell, -1), ell, +1))), f * (-2 * w)
        )
        af = A(f, ell, -1)
        acc[keys[4]].radial(A(hf, ell, -1), _lin((1, H(af, ell - 1)), (w, af)))
        af = A(f, ell + 1, +1)
        acc[keys[5]].radial(A(hf, ell + 1, +1), _lin((1, H(af, ell + 1)), (-w, af)))
        bf = B(f, ell, -1)
        acc[keys[6]].radial(B(hf, ell, -1), _lin((1, H(bf, ell - 1)), (-w, bf)))
        bf = B(f, ell + 1, +1)
        acc[keys[7]].radial(B(hf, ell + 1, +1), _lin((1, H(bf, ell + 1)), (w, bf)))
        acc[keys[8]].radial(qm_ho.shift_r(hf, ell, p, -1), H(qm_ho.shift_r(f, ell, p, -1), ell - 2))
        acc[keys[9]].radial(qm_ho.shift_r(hf, ell, p, +1), H(qm_ho.shift_r(f, ell, p, +1), ell + 2))
        lm = qm_ho.ladder_r(f, ell, p, -1)
        acc[keys[10]].radial(qm_ho.ladder_r(hf, ell, p, -1), _lin((1, H(lm, ell)), (2 * w, lm)))
        for s in (+1, -1):
            lf = qm_ho.ladder_r(f, ell, p, s)
            comm = _lin((1, H(lf, ell)), (-1, qm_ho.ladder_r(hf, ell, p, s)))
            acc[keys[11]].radial(comm, lf * (2 * s * w))
    return [a.check() for a in acc.values()]


# --------------------------------------------------------------------------- Kepler-Coulomb identities


def _kc_identities(rng, n, p: qm_kc.KcParams, exact, tol) -> list:
    k = p.k
    H = lambda f, l: qm_kc.apply_hl(f, l, p)  # noqa: E731
    D = lambda f, l, s: qm_kc.shift_r(f, l, p, s)  # noqa: E731
    h = lambda f, nn: qm_kc.apply_hhat(f, nn, p)  # noqa: E731
    Lp = lambda f, nn: qm_kc.ladder_r(f, nn, p, +1)  # noqa: E731
    Lm = lambda f, nn: qm_kc.ladder_r(f, nn, p, -1)  # noqa: E731
    acc = {
        key: _Acc(key, "kc", tol)
        for key in (
            "H_l = d-_(l+1) d+_(l+1) - k^2/(4(l+1)^2)",
            "d+_(l+1) H_l = H_(l+1) d+_(l+1)",
            "d-_l H_l = H_(l-1) d-_l",
            "hhat_n = r^2 (H_l - E_n) - l(l+1)",
            "hhat_n = Lambda+_n Lambda-_n + w_n,  w_n = -n(n+1)",
            "hhat_n = Lambda-_(n+1) Lambda+_(n+1) + w_(n+1)",
            "Lambda-_n hhat_n = hhat_(n-1) Lambda-_n",
            "Lambda+_n hhat_(n-1) = hhat_n Lambda+_n",
            "Lambda-_(n+1) Lambda+_(n+1) - Lambda+_n Lambda-_n = 2(n+1)",
            "D_n D_n^-1 = 1,  D_n r = ((n+1)/n) r D_n",
        )
    }
    keys = list(acc)
    alphas = [-k / 2, -k / 4, -k / 6, Fraction(-1, 3) if exact else -1 / 3]
    for _ in range(n):
        ell = rng.randint(1, 4)
        nn = rng.randint(1, 5)
        f = random_radial(rng, rng.choice(alphas), 0, exact)
        hf = H(f, ell)
        c = num(k) ** 2 / (4 * (ell + 1) ** 2)
        acc[keys[0]].radial(hf, _lin((1, D(D(f, ell, +1), ell + 1, -1)), (-c, f)))
        acc[keys[1]].radial(D(hf, ell, +1), H(D(f, ell, +1), ell + 1))
        acc[keys[2]].radial(D(hf, ell, -1), H(D(f, ell, -1), ell - 1))
        r2 = _lin((1, hf), (-qm_kc.energy(nn, p), f)).mul_pow(2)
        acc[keys[3]].radial(h(f, nn), _lin((1, r2), (-ell * (ell + 1), f)))
        acc[keys[4]].radial(h(f, nn), _lin((1, Lp(Lm(f, nn), nn)), (-nn * (nn + 1), f)))
        acc[keys[5]].radial(h(f, nn), _lin((1, Lm(Lp(f, nn + 1), nn + 1)), (-(nn + 1) * (nn + 2), f)))
        acc[keys[6]].radial(Lm(h(f, nn), nn), h(Lm(f, nn), nn - 1))
        acc[keys[7]].radial(Lp(h(f, nn - 1), nn), h(Lp(f, nn), nn))
        acc[keys[8]].radial(
            _lin((1, Lm(Lp(f, nn + 1), nn + 1)), (-1, Lp(Lm(f, nn), nn))), f * (2 * (nn + 1))
        )
        acc[keys[9]].radial(qm_kc.apply_dilation(qm_kc.apply_dilation(f, nn, inverse=True), nn), f)
        lam = Fraction(nn + 1, nn) if exact else (nn + 1) / nn
        acc[keys[9]].radial(qm_kc.apply_dilation(f.mul_pow(1), nn), qm_kc.apply_dilation(f, nn).mul_pow(1) * lam)
    return [a.check() for a in acc.values()]


def _kc_eigen_checks(p: qm_kc.KcParams, nmax: int, tol: float) -> list:
    """Relations that are claimed on eigenfunctions only."""
    comm = _Acc("[H_l, Lambda+_n] psi^(n-1) = (E_n - E_(n-1)) Lambda+_n psi^(n-1)", "kc", tol,
                note="raising direction; energy gain is positive")
    alg = _Acc("Lambda-_(n+1) Lambda+_(n+1) - Lambda+_n Lambda-_n = 2(n+1) on psi_l^n", "kc", tol)
    for n in range(1, nmax + 1):
        for ell in range(0, n + 1):
            psi = qm_kc.build_state(n, ell, 0, p, normalize=False).radial
            alg.radial(
                _lin((1, qm_kc.ladder_r(qm_kc.ladder_r(psi, n + 1, p, +1), n + 1, p, -1)),
                     (-1, qm_kc.ladder_r(qm_kc.ladder_r(psi, n, p, -1), n, p, +1))),
                psi * (2 * (n + 1)),
            )
            if ell <= n - 1:
                low = qm_kc.build_state(n - 1, ell, 0, p, normalize=False).radial
                up = qm_kc.ladder_r(low, n, p, +1)
                lhs = _lin((1, qm_kc.apply_hl(up, ell, p)),
                           (-1, qm_kc.ladder_r(qm_kc.apply_hl(low, ell, p), n, p, +1)))
                gain = qm_kc.energy(n, p) - qm_kc.energy(n - 1, p)
                comm.radial(lhs, up * gain)
    return [comm.check(), alg.check()]


def _as_param(x, exact: bool):
    if exact:
        return Fraction(x).limit_denominator(10**6)
    return float(x)


def quantum_identity_suite(
    systems: Iterable[str] = ("angular", "ho", "kc"),
    samples: int = 24,
    seed: int = 0,
    omega=1,
    k=1,
    exact: bool = True,
    tol: Optional[float] = None,
    lmax: int = 4,
) -> VerificationReport:
    """All displayed quantum operator identities as actions on random functions.

    ``exact=True`` converts the parameters to rationals (they must be rational,
    e.g. 0.5) and compares exactly; the float path uses ``DEFAULT_TOL``.
    """
    tol = (0.0 if exact else DEFAULT_TOL) if tol is None else tol
    rng = random.Random(seed)
    rep = VerificationReport(
        "quantum", {"systems": list(systems), "samples": samples, "seed": seed,
                    "omega": float(omega), "k": float(k), "exact": exact, "lmax": lmax},
    )
    systems = set(systems)
    if "angular" in systems:
        for c in _angular_identities(rng, samples, exact, tol):
            rep.add(c)
        for c in _angular_eigen_checks(lmax, tol):
            rep.add(c)
    if "ho" in systems:
        p = qm_ho.HoParams(_as_param(omega, exact))
        for c in _ho_identities(rng, samples, p, exact, tol):
            rep.add(c)
    if "kc" in systems:
        p = qm_kc.KcParams(_as_param(k, exact))
        for c in _kc_identities(rng, samples, p, exact, tol):
            rep.add(c)
        for c in _kc_eigen_checks(p, min(lmax, 4), tol):
            rep.add(c)
    return rep


# --------------------------------------------------------------------------- spectra


def _rel_eigen_residual(hf: RadialFunction, f: RadialFunction, E) -> float:
    return radial_residual(hf, f * E)


def ho_spectrum(omega=1, nmax: int = 6, exact: bool = True) -> list:
    """Rows ``{n, ell, E, residual}`` for every lattice state with ``n <= nmax``.

    States are always built in rational arithmetic: in floats the shift operators
    leave roundoff in the powers below ``r^ell`` that later shifts amplify.  With
    ``exact=False`` the state is rounded to floats and H is applied in floats.
    """
    p = qm_ho.HoParams(_as_param(omega, exact))
    build = qm_ho.HoParams(_as_param(omega, True))
    rows = []
    for n in range(nmax + 1):
        E = qm_ho.energy(n, p)
        for ell in range(n % 2, n + 1, 2):
            f = qm_ho.build_state(n, ell, 0, build, normalize=False).radial
            if not exact:
                f = f.to_float()
            res = _rel_eigen_residual(qm_ho.apply_hl(f, ell, p), f, E)
            rows.append({"n": n, "ell": ell, "E": float(E), "residual": res})
    return rows


def kc_spectrum(k=1, nmax: int = 5, exact: bool = True) -> list:
    """Rows ``{n, E, residual, degeneracy}``; the residual is the worst over all ell,
    the degeneracy is the number of states found by explicit enumeration.
    States are built as in :func:`ho_spectrum`."""
    p = qm_kc.KcParams(_as_param(k, exact))
    build = qm_kc.KcParams(_as_param(k, True))
    rows = []
    for n in range(nmax + 1):
        E = qm_kc.energy(n, p)
        worst = 0.0
        for ell in range(n + 1):
            f = qm_kc.build_state(n, ell, 0, build, normalize=False).radial
            if not exact:
                f = f.to_float()
            worst = max(worst, _rel_eigen_residual(qm_kc.apply_hl(f, ell, p), f, E))
        deg = len(qm_kc.enumerate_level(n, p))
        rows.append({"n": n, "E": float(E), "residual": worst, "degeneracy": deg})
    return rows


# --------------------------------------------------------------------------- harmonics


def legendre_oracle(ell: int, m: int) -> AngularFunction:
    """``P_l^|m|`` from the Rodrigues formula, ``(1-x^2)^(|m|/2) d^(l+|m|)/dx^(l+|m|) (x^2-1)^l``,
    differentiated by sympy (normalization and Condon-Shortley sign dropped)."""
    x = sp.Symbol("x")
    am = abs(m)
    poly = sp.Poly(sp.diff((x**2 - 1) ** ell, x, ell + am), x)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return AngularFunction(am, tuple(coeffs))


def harmonics_report(lmax: int = 5, tol: float = 1e-12) -> tuple:
    """Generated ``Y_l^m`` for ``l <= lmax`` with oracle ratio and eigen residuals.

    Returns ``(entries, report)``.
    """
    rep = VerificationReport("harmonics", {"lmax": lmax})
    entries = []
    prop = _Acc("Y_l^m proportional to the Rodrigues oracle", "harmonics", tol)
    eig = _Acc("L2_m Y_l^m = l(l+1) Y_l^m", "harmonics", tol)
    cl = _Acc("C_l P_l^m = -m^2 P_l^m", "harmonics", tol)
    missing = 0
    for ell in range(lmax + 1):
        for m in range(-ell, ell + 1):
            pair = qa.build_spherical_harmonic(ell, m)
            g = pair.theta
            oracle = legendre_oracle(ell, m)
            c = angular_proportional(g, oracle, tol)
            if c is None:
                missing += 1
            e = angular_residual(qa.apply_l2m(g, m), g * (ell * (ell + 1)))
            ce = angular_residual(qa.apply_cl(g, ell), g * (-m * m))
            eig.worst, cl.worst = max(eig.worst, e), max(cl.worst, ce)
            eig.count += 1
            cl.count += 1
            prop.count += 1
            entries.append({
                "ell": ell, "m": m, "pair": pair.to_json(),
                "oracle_ratio": None if c is None else [float(complex(c).real), float(complex(c).imag)],
                "eigen_residual": e, "casimir_residual": ce,
            })
    prop.worst = 0.0 if missing == 0 else math.inf
    prop.note = f"{missing} not proportional" if missing else ""
    for a in (prop, eig, cl):
        rep.add(a.check())
    return entries, rep


def run_timed(fn: Callable, *args, **kwargs):
    import time

    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0
