"""Command-line front end.

    superfactor verify quantum   --system ho --lmax 4 --nmax 6
    superfactor verify classical --system kc --samples 500 --seed 7
    superfactor spectrum ho --omega 1 --nmax 6
    superfactor spectrum kc --k 1 --nmax 5
    superfactor harmonics --lmax 5
    superfactor orbit --system kc --k 1 --init 2,0,1.5707963,0,0,1 --time 50 --out orbit.csv
    superfactor actions --system kc --k 1 --orbit orbit.csv

Exit status: 0 when every check is within tolerance, 1 on a failed check,
2 on a usage error.  JSON reports carry ``"schema": "1"``; the same
configuration always produces the same bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import actionangle as aa
from . import verify as vq
from . import verify_classical as vc
from .classical import DomainError, Obs, PhasePoint, System, evaluate
from .dynamics import IntegrationError, IntegratorControls, drift_report, hamilton_flow

__all__ = ["main", "build_parser", "CSV_COLUMNS", "EXIT_OK", "EXIT_FAIL", "EXIT_USAGE"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SCHEMA = vq.SCHEMA
SPECTRUM_TOL = 1e-12
CSV_COLUMNS = ("t", "r", "p_r", "theta", "p_theta", "phi", "p_phi", "H", "L2", "Lz", "Xsym", "Xanti")
_CSV_OBS = (Obs.H, Obs.L2, Obs.LZ, Obs.X_SYM, Obs.X_ANTI)

_DECIMAL = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class UsageError(Exception):
    pass


def decimal(text: str) -> str:
    """Numeric flags are plain decimals (no fractions, hex, inf or nan).  The
    text is kept so the quantum suites can read it as an exact rational."""
    if not _DECIMAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")
    return text.strip()


def positive(text: str) -> str:
    text = decimal(text)
    if not float(text) > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return text


def count(text: str) -> int:
    if not re.match(r"^\d+$", text.strip()):
        raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return int(text)


def _f(text) -> float:
    return float(text)


def _seed(args) -> int:
    env = os.environ.get("SUPERFACTOR_SEED")
    if env is not None and env.strip() != "":
        if not re.match(r"^\d+$", env.strip()):
            raise UsageError(f"SUPERFACTOR_SEED is not a non-negative integer: {env!r}")
        return int(env)
    return args.seed


def _system(args) -> System:
    if args.system == "ho":
        return System.ho(_f(args.omega))
    return System.kc(_f(args.k))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_jsonable) + "\n"


def _jsonable(o):
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Fraction):
        return float(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _clean(v):
    """Non-finite floats become strings so the JSON stays standard."""
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    return v


def _emit(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _summary(report: vq.VerificationReport, quiet: bool) -> None:
    if quiet:
        return
    for line in report.lines():
        print(line, file=sys.stderr)


# --------------------------------------------------------------------------- subcommands


def _spectrum_tol(flag, exact: bool) -> float:
    if flag is not None:
        return _f(flag)
    return SPECTRUM_TOL if exact else vq.DEFAULT_TOL


def cmd_verify_quantum(args) -> int:
    exact = not args.float
    systems = ["angular"] + ([args.system] if args.system != "all" else ["ho", "kc"])
    rep = vq.quantum_identity_suite(
        systems=systems, samples=args.samples, seed=_seed(args), omega=Fraction(args.omega),
        k=Fraction(args.k), exact=exact, tol=None if args.tol is None else _f(args.tol), lmax=args.lmax,
    )
    spectrum_tol = _spectrum_tol(args.spectrum_tol, exact)
    if "ho" in systems:
        rows = vq.ho_spectrum(Fraction(args.omega), args.nmax, exact)
        rep.add(vq.Check(f"oscillator spectrum E_n = w(2n+3)/2, n <= {args.nmax}", "spectrum",
                         max(r["residual"] for r in rows), spectrum_tol, len(rows)))
    if "kc" in systems:
        rows = vq.kc_spectrum(Fraction(args.k), args.nmax, exact)
        rep.add(vq.Check(f"Kepler spectrum E_n = -k^2/(4(n+1)^2), n <= {args.nmax}", "spectrum",
                         max(r["residual"] for r in rows), spectrum_tol, len(rows)))
        bad = sum(r["degeneracy"] != (r["n"] + 1) ** 2 for r in rows)
        rep.add(vq.Check("Kepler degeneracy (n+1)^2 (count of mismatches)", "spectrum", float(bad), 0.0, len(rows)))
    _, hrep = vq.harmonics_report(args.lmax, _f(args.harmonics_tol))
    rep.extend(hrep)
    _emit(_dump(_clean(rep.to_json())), args.out)
    _summary(rep, args.quiet)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_classical(args) -> int:
    system = _system(args)
    seed = _seed(args)
    rep = vq.VerificationReport("classical", {"system": system.kind, "param": system.param,
                                              "samples": args.samples, "seed": seed})
    rep.extend(vc.moduli_suite(system, args.samples, seed, _f(args.moduli_tol)))
    rep.extend(vc.bracket_suite(system, args.bracket_samples, seed, _f(args.bracket_tol),
                                constant_tol=_f(args.constant_tol)))
    rep.extend(vc.gradient_suite(system, args.samples, seed, _f(args.gradient_tol)))
    rep.extend(vc.anchor_suite(system, seed, _f(args.anchor_tol)))
    if args.dynamics:
        ctrl = IntegratorControls(tolerance=_f(args.integrator_tol))
        rep.extend(vc.dynamics_suite(system, args.orbits, _f(args.periods), seed, _f(args.drift_tol),
                                     _f(args.period_tol), ctrl=ctrl))
    if args.action_angle:
        rep.extend(vc.action_angle_suite(system, args.aa_samples, seed, _f(args.aa_tol),
                                         orbit_tol=_f(args.aa_orbit_tol)))
    _emit(_dump(_clean(rep.to_json())), args.out)
    _summary(rep, args.quiet)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_spectrum(args) -> int:
    exact = not args.float
    tol = _spectrum_tol(args.tol, exact)
    if args.system == "ho":
        rows = vq.ho_spectrum(Fraction(args.omega), args.nmax, exact)
        ok = all(r["residual"] <= tol for r in rows)
        params = {"omega": _f(args.omega)}
    else:
        rows = vq.kc_spectrum(Fraction(args.k), args.nmax, exact)
        ok = all(r["residual"] <= tol and r["degeneracy"] == (r["n"] + 1) ** 2 for r in rows)
        params = {"k": _f(args.k)}
    doc = {"schema": SCHEMA, "system": args.system, "params": {**params, "nmax": args.nmax, "exact": exact},
           "tolerance": tol, "passed": ok, "rows": rows}
    _emit(_dump(_clean(doc)), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_harmonics(args) -> int:
    entries, rep = vq.harmonics_report(args.lmax, _f(args.tol))
    doc = {"schema": SCHEMA, "lmax": args.lmax, "passed": rep.passed, "pairs": entries,
           "checks": [c.to_json() for c in rep.checks]}
    _emit(_dump(_clean(doc)), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _parse_init(text: str) -> PhasePoint:
    parts = text.split(",")
    if len(parts) != 6:
        raise UsageError("--init needs six comma-separated values r,pr,theta,ptheta,phi,pphi")
    for p in parts:
        decimal(p)
    try:
        return PhasePoint(*(float(p) for p in parts))
    except ValueError as exc:
        raise UsageError(f"--init: {exc}") from None


def orbit_csv(traj) -> str:
    """CSV text with the fixed column set; floats in shortest round-trip form."""
    states = traj.exported()
    obs = np.array([np.real(traj.observable(o)) for o in _CSV_OBS]).T
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t, y, o in zip(traj.t, states, obs):
        w.writerow([repr(float(v)) for v in (t, *y, *o)])
    return buf.getvalue()


def cmd_orbit(args) -> int:
    system = _system(args)
    pt = _parse_init(args.init)
    T = _f(args.time)
    ctrl = IntegratorControls(
        dt=None if args.dt is None else _f(args.dt),
        tolerance=_f(args.integrator_tol),
        allow_unbound=args.allow_unbound,
    )
    try:
        traj = hamilton_flow(pt, system, T, ctrl)
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep = drift_report(traj)
    tol = _f(args.drift_tol)
    ok = rep.worst() <= tol
    side = {
        "schema": SCHEMA, "system": system.kind, "param": system.param, "init": list(pt.to_array()),
        "time": T, "integrator": traj.meta, "drift_tolerance": tol, "passed": ok, "drift": rep.to_json(),
    }
    _emit(orbit_csv(traj), args.out)
    report_path = args.report or (None if args.out in (None, "-") else args.out + ".drift.json")
    if report_path is None:
        sys.stderr.write(_dump(_clean(side)))
    else:
        _emit(_dump(_clean(side)), report_path)
    return EXIT_OK if ok else EXIT_FAIL


def read_orbit_csv(path: str) -> tuple:
    """``(t, states)`` from a CSV written by ``orbit``; states have shape (N, 6)."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0][: len(CSV_COLUMNS)]) != CSV_COLUMNS:
        raise UsageError(f"{path}: header must be {','.join(CSV_COLUMNS)}")
    data = np.array([[float(v) for v in row[:7]] for row in rows[1:] if row], dtype=float)
    if data.ndim != 2 or len(data) < 3:
        raise UsageError(f"{path}: need at least three samples")
    return data[:, 0], data[:, 1:7]


def cmd_actions(args) -> int:
    system = _system(args)
    t, states = read_orbit_csv(args.orbit)
    try:
        series = aa.angle_series(states, system, strict=False)
    except (aa.SamplingTooCoarseError, DomainError) as exc:
        doc = {"schema": SCHEMA, "system": system.kind, "param": system.param, "passed": False,
               "error": type(exc).__name__, "message": str(exc)}
        _emit(_dump(doc), args.out)
        return EXIT_FAIL
    names = ("J_phi", "J_theta", "J_r", "xi_phi", "xi_theta", "xi_r")
    spread = {k: float(np.ptp(series[k])) for k in names[:5] if series[k] is not None}
    fit = None
    if series["xi_r"] is not None:
        fit = aa.fit_line(t, series["xi_r"])
        H = float(np.mean(np.real(evaluate(Obs.H, states.T, system))))
        fit["expected_slope"] = aa.slope_expected(system, H)
    tol, fit_tol = _f(args.tol), _f(args.fit_tol)
    ok = all(v <= tol for v in spread.values()) and (fit is None or fit["max_residual"] <= fit_tol)
    doc = {
        "schema": SCHEMA, "system": system.kind, "param": system.param, "passed": ok,
        "tolerance": tol, "fit_tolerance": fit_tol, "undefined_angles": series["degenerate"],
        "xi_r_fit": fit, "peak_to_peak": spread,
        "series": {"t": t.tolist(), **{k: None if series[k] is None else series[k].tolist() for k in names}},
    }
    _emit(_dump(_clean(doc)), args.out)
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------- parser


def _system_flags(p, required=True, choices=("ho", "kc")):
    p.add_argument("--system", choices=choices, required=required, default=None if required else choices[0])
    p.add_argument("--omega", type=positive, default="1", help="oscillator frequency")
    p.add_argument("--k", type=positive, default="1", help="Coulomb coupling")


def _common(p, seed=False):
    p.add_argument("--out", default=None, help="output path (default stdout)")
    if seed:
        p.add_argument("--seed", type=count, default=0, help="RNG seed (SUPERFACTOR_SEED overrides)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superfactor", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run verification suites").add_subparsers(dest="suite", required=True)
    q = ver.add_parser("quantum", help="operator identities, spectra and harmonics")
    _system_flags(q, required=False, choices=("all", "ho", "kc"))
    q.add_argument("--lmax", type=count, default=4)
    q.add_argument("--nmax", type=count, default=6)
    q.add_argument("--samples", type=count, default=24)
    q.add_argument("--float", action="store_true", help="floating-point instead of exact rational arithmetic")
    q.add_argument("--tol", type=decimal, default=None, help="identity tolerance (default 0 exact, 1e-10 float)")
    q.add_argument("--spectrum-tol", type=decimal, default=None, help="default 1e-12 exact, 1e-10 float")
    q.add_argument("--harmonics-tol", type=decimal, default="1e-12")
    q.add_argument("--quiet", action="store_true")
    _common(q, seed=True)
    q.set_defaults(func=cmd_verify_quantum)

    c = ver.add_parser("classical", help="moduli, Poisson brackets, gradients, optional orbits")
    _system_flags(c)
    c.add_argument("--samples", type=count, default=500)
    c.add_argument("--bracket-samples", type=count, default=200)
    c.add_argument("--moduli-tol", type=decimal, default="1e-10")
    c.add_argument("--bracket-tol", type=decimal, default="1e-6")
    c.add_argument("--constant-tol", type=decimal, default="1e-8", help="for {H, S} and {H, X}")
    c.add_argument("--gradient-tol", type=decimal, default="1e-7")
    c.add_argument("--anchor-tol", type=decimal, default="1e-12")
    c.add_argument("--dynamics", action="store_true", help="also integrate orbits")
    c.add_argument("--orbits", type=count, default=20)
    c.add_argument("--periods", type=positive, default="10.5")
    c.add_argument("--drift-tol", type=decimal, default="1e-8")
    c.add_argument("--period-tol", type=decimal, default="1e-6")
    c.add_argument("--integrator-tol", type=decimal, default="1e-9")
    c.add_argument("--action-angle", action="store_true", help="also run the action-angle checks")
    c.add_argument("--aa-samples", type=count, default=100)
    c.add_argument("--aa-tol", type=decimal, default="1e-5")
    c.add_argument("--aa-orbit-tol", type=decimal, default="1e-6")
    c.add_argument("--quiet", action="store_true")
    _common(c, seed=True)
    c.set_defaults(func=cmd_verify_classical)

    sp_ = sub.add_parser("spectrum", help="bound-state energies with eigen residuals")
    sp_.add_argument("system", choices=("ho", "kc"))
    sp_.add_argument("--omega", type=positive, default="1")
    sp_.add_argument("--k", type=positive, default="1")
    sp_.add_argument("--nmax", type=count, default=6)
    sp_.add_argument("--float", action="store_true")
    sp_.add_argument("--tol", type=decimal, default=None, help="default 1e-12 exact, 1e-10 float")
    _common(sp_)
    sp_.set_defaults(func=cmd_spectrum)

    h = sub.add_parser("harmonics", help="spherical harmonics from the angular ladders")
    h.add_argument("--lmax", type=count, default=5)
    h.add_argument("--tol", type=decimal, default="1e-12")
    _common(h)
    h.set_defaults(func=cmd_harmonics)

    o = sub.add_parser("orbit", help="integrate Hamilton's equations, write CSV and a drift report")
    _system_flags(o)
    o.add_argument("--init", required=True, help="r,pr,theta,ptheta,phi,pphi")
    o.add_argument("--time", type=decimal, required=True)
    o.add_argument("--dt", type=positive, default=None, help="initial step (halved until the drift test passes)")
    o.add_argument("--integrator-tol", type=positive, default="1e-9")
    o.add_argument("--drift-tol", type=decimal, default="1e-8")
    o.add_argument("--allow-unbound", action="store_true")
    o.add_argument("--report", default=None, help="drift JSON path (default <out>.drift.json, stderr for stdout)")
    _common(o)
    o.set_defaults(func=cmd_orbit)

    a = sub.add_parser("actions", help="actions and angles along an orbit CSV")
    _system_flags(a)
    a.add_argument("--orbit", required=True, help="CSV written by the orbit command")
    a.add_argument("--tol", type=decimal, default="1e-6", help="peak-to-peak bound on conserved quantities")
    a.add_argument("--fit-tol", type=decimal, default="1e-6", help="max deviation of xi_r from its fitted line")
    _common(a)
    a.set_defaults(func=cmd_actions)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, OSError) as exc:
        print(f"superfactor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"superfactor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
