# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same arithmetic as ``_kernels_py``; loops release the GIL."""
import numpy as np

from libc.math cimport atan2, atanh, ceil, copysign, cos, cosh, fabs, hypot, log2, sin, sinh, sqrt

cdef int TAYLOR_ORDER = 18
cdef double SCALE_TARGET = 0.5
cdef double _M1_SQ = 2.0
cdef double _M2_SQ = 1.0


cdef void _matmul(const double complex* a, const double complex* b, double complex* out, int n) noexcept nogil:
    cdef int i, j, k
    cdef double complex acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = acc + a[i * n + k] * b[k * n + j]
            out[i * n + j] = acc


cdef void _expm(const double complex* a, int n, double complex* out) noexcept nogil:
    cdef double complex x[16]
    cdef double complex term[16]
    cdef double complex tmp[16]
    cdef double norm1 = 0.0, col
    cdef int i, j, k, squarings = 0
    cdef double factor

    for j in range(n):
        col = 0.0
        for i in range(n):
            col = col + hypot(a[i * n + j].real, a[i * n + j].imag)
        if col > norm1:
            norm1 = col
    if norm1 > SCALE_TARGET:
        squarings = <int>ceil(log2(norm1 / SCALE_TARGET))
    factor = 1.0
    for i in range(squarings):
        factor = factor * 2.0
    for i in range(n * n):
        x[i] = a[i] / factor
        out[i] = 0
        term[i] = 0
    for i in range(n):
        out[i * n + i] = 1
        term[i * n + i] = 1
    for k in range(1, TAYLOR_ORDER + 1):
        _matmul(term, x, tmp, n)
        for i in range(n * n):
            term[i] = tmp[i] / k
            out[i] = out[i] + term[i]
    for k in range(squarings):
        _matmul(out, out, tmp, n)
        for i in range(n * n):
            out[i] = tmp[i]


def expm(a):
    """Matrix exponential of a complex matrix with n <= 4."""
    cdef double complex[:, ::1] av = np.ascontiguousarray(a, dtype=np.complex128)
    cdef int n = av.shape[0]
    if av.shape[1] != n or n > 4:
        raise ValueError("expm kernel needs a square matrix with n <= 4")
    result = np.empty((n, n), dtype=np.complex128)
    if n == 0:
        return result
    cdef double complex[:, ::1] ov = result
    with nogil:
        _expm(&av[0, 0], n, &ov[0, 0])
    return result


cdef void _closed_form_point(double zeta, double x, double* out) noexcept nogil:
    cdef double sx = sin(x)
    cdef double p12 = zeta * zeta * (sx * sx)
    cdef double h = zeta * zeta / (1.0 + zeta * zeta)
    cdef double p12h = h * (sx * sx)
    out[0] = 1.0 - p12
    out[1] = p12
    out[2] = 1.0 - p12h
    out[3] = p12h


cdef inline double complex _pair(double complex u0, double complex u1, double e00, double e01, double e11,
                                 double complex v0, double complex v1) noexcept nogil:
    cdef double complex w0 = e00 * v0 + e01 * v1
    cdef double complex w1 = e01 * v0 + e11 * v1
    return u0.conjugate() * w0 + u1.conjugate() * w1


cdef inline double complex _phase(double angle) noexcept nogil:
    cdef double complex z
    z.real = cos(angle)
    z.imag = sin(angle)
    return z


cdef void _state_point(double zeta, double x, double* out) noexcept nogil:
    cdef double m5 = 0.5 * zeta
    cdef double half = 0.5 * (_M1_SQ - _M2_SQ)
    cdef double mean = 0.5 * (_M1_SQ + _M2_SQ)
    cdef double r, wp, wm, dt, s, big, small, theta, ch, sh, k
    cdef double p0, p1, q0, q1, e00, e01, e11
    cdef double rh, whp, whm, dth, ang, cs, sn
    cdef double complex ep, em, a, b, z
    cdef double complex f1_0, f1_1, g1_0, g1_1, f2_0, f2_1, c2_0, c2_1
    cdef double complex ehp, ehm, amp12, amp11

    r = sqrt(half * half - m5 * m5)
    wp = sqrt(mean + r)
    wm = sqrt(mean - r)
    dt = 2.0 * x / (wp - wm)
    ep = _phase(wp * dt)
    em = _phase(wm * dt)

    if zeta == 0.0:
        p0 = 1.0; p1 = 0.0; q0 = 0.0; q1 = 1.0
        ch = 1.0; sh = 0.0
        k = 1.0
    else:
        s = sqrt(1.0 - zeta * zeta)
        big = copysign(sqrt(0.5 * (1.0 + s)), zeta)
        small = fabs(zeta) / sqrt(2.0 * (1.0 + s))
        p0 = big; p1 = -small
        q0 = -small; q1 = big
        theta = 0.5 * atanh(zeta)
        ch = cosh(theta); sh = sinh(theta)
        k = 1.0 / s

    e00 = k; e01 = k * zeta; e11 = k

    f1_0 = ch * p0 + sh * q0
    f1_1 = ch * p1 + sh * q1
    a = ch * ep
    b = sh * em
    g1_0 = a * p0 + b * q0
    g1_1 = a * p1 + b * q1
    a = sh * ep
    b = ch * em
    f2_0 = a * p0 + b * q0
    f2_1 = a * p1 + b * q1
    c2_0 = k * f2_0 + (k * zeta) * f2_1
    c2_1 = (-k * zeta) * f2_0 - k * f2_1

    z = _pair(c2_0, c2_1, e00, e01, e11, f1_0, f1_1) * _pair(f1_0, f1_1, e00, e01, e11, c2_0, c2_1)
    out[1] = z.real
    z = _pair(g1_0, g1_1, e00, e01, e11, f1_0, f1_1) * _pair(f1_0, f1_1, e00, e01, e11, g1_0, g1_1)
    out[0] = z.real

    rh = sqrt(half * half + m5 * m5)
    whp = sqrt(mean + rh)
    whm = sqrt(mean - rh)
    dth = 2.0 * x / (whp - whm)
    ehp = _phase(whp * dth)
    ehm = _phase(whm * dth)
    ang = 0.5 * atan2(zeta, 1.0)
    cs = cos(ang); sn = sin(ang)
    amp12 = (cs * sn) * (ehp - ehm)
    amp11 = (cs * cs) * ehp + (sn * sn) * ehm
    out[3] = (amp12.conjugate() * amp12).real
    out[2] = (amp11.conjugate() * amp11).real


cdef void _fill(const double[::1] zetas, const double[::1] xs, double[:, ::1] out, bint closed) noexcept nogil:
    cdef Py_ssize_t i, j, row = 0
    for i in range(zetas.shape[0]):
        for j in range(xs.shape[0]):
            out[row, 0] = zetas[i]
            out[row, 1] = xs[j]
            if closed:
                _closed_form_point(zetas[i], xs[j], &out[row, 2])
            else:
                _state_point(zetas[i], xs[j], &out[row, 2])
            row += 1


def _grid(zetas, xs, bint closed):
    cdef const double[::1] zv = np.ascontiguousarray(zetas, dtype=np.float64)
    cdef const double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    result = np.empty((zv.shape[0] * xv.shape[0], 6))
    if result.shape[0] == 0:
        return result
    cdef double[:, ::1] ov = result
    with nogil:
        _fill(zv, xv, ov, closed)
    return result


def closed_form_grid(zetas, xs):
    return _grid(zetas, xs, True)


def state_based_grid(zetas, xs):
    return _grid(zetas, xs, False)


def closed_form_point(double zeta, double x):
    cdef double out[4]
    _closed_form_point(zeta, x, out)
    return out[0], out[1], out[2], out[3]


def state_point(double zeta, double x):
    cdef double out[4]
    _state_point(zeta, x, out)
    return out[0], out[1], out[2], out[3]
