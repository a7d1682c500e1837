"""Pure-Python kernels. Mirrors ``_kernels.pyx`` operation for operation."""
import math

import numpy as np

TAYLOR_ORDER = 18
# scale so the 1-norm is at most this before the Taylor sum
SCALE_TARGET = 0.5

# State-based grids realize each zeta with m1^2 = 2, m2^2 = 1, m5^2 = zeta / 2.
_M1_SQ = 2.0
_M2_SQ = 1.0


def expm(a):
    """Matrix exponential of a small complex matrix by scaling and squaring."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    norm1 = float(np.max(np.sum(np.abs(a), axis=0))) if n else 0.0
    squarings = 0
    if norm1 > SCALE_TARGET:
        squarings = int(math.ceil(math.log2(norm1 / SCALE_TARGET)))
    x = a / 2.0**squarings
    result = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in range(1, TAYLOR_ORDER + 1):
        term = term @ x / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def closed_form_point(zeta, x):
    sx = math.sin(x)
    p12 = zeta * zeta * (sx * sx)
    h = zeta * zeta / (1.0 + zeta * zeta)
    p12h = h * (sx * sx)
    return 1.0 - p12, p12, 1.0 - p12h, p12h


def _pair(u0, u1, e00, e01, e11, v0, v1):
    # u^dagger . eta . v for real symmetric eta
    w0 = e00 * v0 + e01 * v1
    w1 = e01 * v0 + e11 * v1
    return u0.conjugate() * w0 + u1.conjugate() * w1


def state_point(zeta, x):
    """Survival/oscillation probabilities from explicit flavour states.

    Returns ``(p11, p12, p11_herm, p12_herm)`` at phase ``x`` = dw*dt/2,
    starting from t0 = 0.
    """
    m5 = 0.5 * zeta
    half = 0.5 * (_M1_SQ - _M2_SQ)
    mean = 0.5 * (_M1_SQ + _M2_SQ)

    r = math.sqrt(half * half - m5 * m5)
    wp = math.sqrt(mean + r)
    wm = math.sqrt(mean - r)
    dt = 2.0 * x / (wp - wm)
    ep = complex(math.cos(wp * dt), math.sin(wp * dt))
    em = complex(math.cos(wm * dt), math.sin(wm * dt))

    if zeta == 0.0:
        p0, p1, q0, q1 = 1.0, 0.0, 0.0, 1.0
        ch, sh = 1.0, 0.0
        k = 1.0
    else:
        s = math.sqrt(1.0 - zeta * zeta)
        # N zeta and N (1 - s) rewritten so nothing underflows as zeta -> 0
        big = math.copysign(math.sqrt(0.5 * (1.0 + s)), zeta)
        small = abs(zeta) / math.sqrt(2.0 * (1.0 + s))
        p0, p1 = big, -small
        q0, q1 = -small, big
        theta = 0.5 * math.atanh(zeta)
        ch, sh = math.cosh(theta), math.sinh(theta)
        k = 1.0 / s

    # PA = k [[1, z], [z, 1]],  A = k [[1, z], [-z, -1]]
    e00, e01, e11 = k, k * zeta, k

    f1_0 = complex(ch * p0 + sh * q0)
    f1_1 = complex(ch * p1 + sh * q1)
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
    p12 = z.real
    z = _pair(g1_0, g1_1, e00, e01, e11, f1_0, f1_1) * _pair(f1_0, f1_1, e00, e01, e11, g1_0, g1_1)
    p11 = z.real

    rh = math.sqrt(half * half + m5 * m5)
    whp = math.sqrt(mean + rh)
    whm = math.sqrt(mean - rh)
    dth = 2.0 * x / (whp - whm)
    ehp = complex(math.cos(whp * dth), math.sin(whp * dth))
    ehm = complex(math.cos(whm * dth), math.sin(whm * dth))
    ang = 0.5 * math.atan2(zeta, 1.0)
    cs, sn = math.cos(ang), math.sin(ang)
    amp12 = (cs * sn) * (ehp - ehm)
    amp11 = (cs * cs) * ehp + (sn * sn) * ehm
    p12h = (amp12.conjugate() * amp12).real
    p11h = (amp11.conjugate() * amp11).real
    return p11, p12, p11h, p12h


def _grid(zetas, xs, point):
    zetas = np.asarray(zetas, dtype=np.float64)
    xs = np.asarray(xs, dtype=np.float64)
    out = np.empty((zetas.size * xs.size, 6))
    row = 0
    for z in zetas.tolist():
        for x in xs.tolist():
            out[row, 0] = z
            out[row, 1] = x
            out[row, 2:] = point(z, x)
            row += 1
    return out


def closed_form_grid(zetas, xs):
    return _grid(zetas, xs, closed_form_point)


def state_based_grid(zetas, xs):
    return _grid(zetas, xs, state_point)
