"""Pure-Python reference of the orbit kernel (3-stage Gauss-Legendre collocation).

Must stay step-for-step identical to ``_flow.pyx``; the compiled version is a
transcription of this file.

State layout: ``(r, p_r, theta, p_theta, phi, p_phi)``.  ``code`` 0 = oscillator,
1 = Kepler-Coulomb; ``line`` = 1 integrates the zero-angular-momentum oscillator
along a line with a signed radius.
"""

import math

import numpy as np

SQ15 = math.sqrt(15.0)
A = (
    (5.0 / 36.0, 2.0 / 9.0 - SQ15 / 15.0, 5.0 / 36.0 - SQ15 / 30.0),
    (5.0 / 36.0 + SQ15 / 24.0, 2.0 / 9.0, 5.0 / 36.0 - SQ15 / 24.0),
    (5.0 / 36.0 + SQ15 / 30.0, 2.0 / 9.0 + SQ15 / 15.0, 5.0 / 36.0),
)
B = (5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0)

R_GUARD = 1e-4
SIN_GUARD = 1e-4
MAX_ITER = 60

OK, SINGULAR, NOCONV = 0, 1, 2


def rhs(y, code, param, line):
    r, pr, th, pth, ph, pph = y
    if line:
        return [2.0 * pr, -0.5 * param * param * r, 0.0, 0.0, 0.0, 0.0]
    s = math.sin(th)
    c = math.cos(th)
    ir2 = 1.0 / (r * r)
    is2 = 1.0 / (s * s)
    L2 = pth * pth + pph * pph * is2
    if code == 0:
        dV = 0.5 * param * param * r
    else:
        dV = param * ir2
    return [
        2.0 * pr,
        -dV + 2.0 * L2 * ir2 / r,
        2.0 * pth * ir2,
        2.0 * pph * pph * c * ir2 * is2 / s,
        2.0 * pph * ir2 * is2,
        0.0,
    ]


def _singular(y, line):
    if line:
        return False
    return y[0] < R_GUARD or abs(math.sin(y[2])) < SIN_GUARD


def step(y, comp, h, code, param, line):
    """One collocation step with compensated update; returns (y, comp, status)."""
    f0 = rhs(y, code, param, line)
    K = [list(f0), list(f0), list(f0)]
    scale = max(1.0, max(abs(v) for v in y))
    prev = math.inf
    status = NOCONV
    for _ in range(MAX_ITER):
        newK = []
        for i in range(3):
            yi = [y[j] + h * (A[i][0] * K[0][j] + A[i][1] * K[1][j] + A[i][2] * K[2][j]) for j in range(6)]
            if _singular(yi, line):
                return y, comp, SINGULAR
            newK.append(rhs(yi, code, param, line))
        delta = 0.0
        for i in range(3):
            for j in range(6):
                d = abs(newK[i][j] - K[i][j])
                if d > delta:
                    delta = d
        K = newK
        delta *= abs(h)
        if delta <= 1e-16 * scale or (delta >= prev and delta <= 1e-12 * scale):
            status = OK
            break
        prev = delta
    if status != OK:
        return y, comp, status
    ynew = list(y)
    cnew = list(comp)
    for j in range(6):
        inc = h * (B[0] * K[0][j] + B[1] * K[1][j] + B[2] * K[2][j])
        # Kahan summation keeps round-off from accumulating over 1e5+ steps
        t = inc - cnew[j]
        s = ynew[j] + t
        cnew[j] = (s - ynew[j]) - t
        ynew[j] = s
    if _singular(ynew, line):
        return ynew, cnew, SINGULAR
    return ynew, cnew, OK


def gauss_step(y0, h, code, param, line):
    y, _, status = step([float(v) for v in y0], [0.0] * 6, float(h), int(code), float(param), int(line))
    return np.array(y), status


def flow(y0, nsteps, h, code, param, line, every):
    """Integrate ``nsteps`` steps, recording the start and every ``every``-th state.

    Returns ``(samples, status, steps_done)``; on failure the samples stop at the
    last good recorded state.
    """
    y = [float(v) for v in y0]
    comp = [0.0] * 6
    rows = [list(y)]
    status = OK
    done = 0
    for n in range(1, nsteps + 1):
        y, comp, status = step(y, comp, h, code, param, line)
        if status != OK:
            break
        done = n
        if n % every == 0:
            rows.append(list(y))
    return np.array(rows), status, done
