# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit kernel; a line-by-line transcription of ``_flow_py.py``."""

import numpy as np
from libc.math cimport sin, cos, fabs, sqrt, INFINITY

cdef double SQ15 = sqrt(15.0)
cdef double A[3][3]
A[0][0] = 5.0 / 36.0
A[0][1] = 2.0 / 9.0 - SQ15 / 15.0
A[0][2] = 5.0 / 36.0 - SQ15 / 30.0
A[1][0] = 5.0 / 36.0 + SQ15 / 24.0
A[1][1] = 2.0 / 9.0
A[1][2] = 5.0 / 36.0 - SQ15 / 24.0
A[2][0] = 5.0 / 36.0 + SQ15 / 30.0
A[2][1] = 2.0 / 9.0 + SQ15 / 15.0
A[2][2] = 5.0 / 36.0
cdef double B[3]
B[0] = 5.0 / 18.0
B[1] = 4.0 / 9.0
B[2] = 5.0 / 18.0

cdef double R_GUARD = 1e-4
cdef double SIN_GUARD = 1e-4
cdef int MAX_ITER = 60
cdef int OK = 0
cdef int SINGULAR = 1
cdef int NOCONV = 2


cdef inline void rhs(const double* y, int code, double param, int line, double* out) noexcept nogil:
    cdef double r = y[0], pr = y[1], th = y[2], pth = y[3], pph = y[5]
    cdef double s, c, ir2, is2, L2, dV
    if line:
        out[0] = 2.0 * pr
        out[1] = -0.5 * param * param * r
        out[2] = 0.0
        out[3] = 0.0
        out[4] = 0.0
        out[5] = 0.0
        return
    s = sin(th)
    c = cos(th)
    ir2 = 1.0 / (r * r)
    is2 = 1.0 / (s * s)
    L2 = pth * pth + pph * pph * is2
    if code == 0:
        dV = 0.5 * param * param * r
    else:
        dV = param * ir2
    out[0] = 2.0 * pr
    out[1] = -dV + 2.0 * L2 * ir2 / r
    out[2] = 2.0 * pth * ir2
    out[3] = 2.0 * pph * pph * c * ir2 * is2 / s
    out[4] = 2.0 * pph * ir2 * is2
    out[5] = 0.0


cdef inline bint singular(const double* y, int line) noexcept nogil:
    if line:
        return False
    return y[0] < R_GUARD or fabs(sin(y[2])) < SIN_GUARD


cdef int step(double* y, double* comp, double h, int code, double param, int line) noexcept nogil:
    cdef double K[3][6]
    cdef double newK[3][6]
    cdef double yi[6]
    cdef double f0[6]
    cdef double scale = 1.0, prev = INFINITY, delta, d, inc, t, s
    cdef int i, j, it, status = NOCONV
    rhs(y, code, param, line, f0)
    for j in range(6):
        if fabs(y[j]) > scale:
            scale = fabs(y[j])
        for i in range(3):
            K[i][j] = f0[j]
    for it in range(MAX_ITER):
        for i in range(3):
            for j in range(6):
                yi[j] = y[j] + h * (A[i][0] * K[0][j] + A[i][1] * K[1][j] + A[i][2] * K[2][j])
            if singular(yi, line):
                return SINGULAR
            rhs(yi, code, param, line, newK[i])
        delta = 0.0
        for i in range(3):
            for j in range(6):
                d = fabs(newK[i][j] - K[i][j])
                if d > delta:
                    delta = d
                K[i][j] = newK[i][j]
        delta *= fabs(h)
        if delta <= 1e-16 * scale or (delta >= prev and delta <= 1e-12 * scale):
            status = OK
            break
        prev = delta
    if status != OK:
        return status
    for j in range(6):
        inc = h * (B[0] * K[0][j] + B[1] * K[1][j] + B[2] * K[2][j])
        t = inc - comp[j]
        s = y[j] + t
        comp[j] = (s - y[j]) - t
        y[j] = s
    if singular(y, line):
        return SINGULAR
    return OK


def gauss_step(y0, double h, int code, double param, int line):
    cdef double y[6]
    cdef double comp[6]
    cdef int j, status
    for j in range(6):
        y[j] = float(y0[j])
        comp[j] = 0.0
    status = step(y, comp, h, code, param, line)
    return np.array([y[j] for j in range(6)]), status


def flow(y0, long nsteps, double h, int code, double param, int line, long every):
    cdef long nout = nsteps // every + 1
    out_arr = np.empty((nout, 6), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double y[6]
    cdef double comp[6]
    cdef long n, row = 0, done = 0
    cdef int j, status = OK
    for j in range(6):
        y[j] = float(y0[j])
        comp[j] = 0.0
        out[0, j] = y[j]
    row = 1
    with nogil:
        for n in range(1, nsteps + 1):
            status = step(y, comp, h, code, param, line)
            if status != OK:
                break
            done = n
            if n % every == 0:
                for j in range(6):
                    out[row, j] = y[j]
                row += 1
    return out_arr[:row].copy(), status, done
