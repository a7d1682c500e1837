"""Dense complex kernel for the small matrices (2 <= n <= 4) used by the model.

Matrices are plain ``numpy`` complex arrays; :func:`as_cmat` is the validating
constructor every public function runs its inputs through.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError

TOL_DEFECTIVE = 1e-9
TOL_NULL_SPACE = 1e-10


def as_cmat(m) -> np.ndarray:
    """Return ``m`` as an n x n complex128 array, 2 <= n <= 4, all entries finite."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not 2 <= a.shape[0] <= 4:
        raise DimensionError(f"matrix dimension {a.shape[0]} outside 2..4")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def adjoint(m) -> np.ndarray:
    return as_cmat(m).conj().T


def commutator(a, b) -> np.ndarray:
    a = as_cmat(a)
    b = as_cmat(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot commute {a.shape} with {b.shape}")
    return a @ b - b @ a


@dataclass(frozen=True)
class EigenPair2:
    """Eigen-decomposition of a 2 x 2 matrix.

    When ``defective`` is set the two eigenvalues coincide and ``v_plus`` and
    ``v_minus`` are the same (only) eigenvector.
    """

    lambda_plus: complex
    lambda_minus: complex
    v_plus: np.ndarray
    v_minus: np.ndarray
    defective: bool

    def vectors(self) -> np.ndarray:
        """Eigenvectors as columns."""
        return np.column_stack([self.v_plus, self.v_minus])


def _fix_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    cutoff = 1e-12 * np.max(np.abs(v))
    for k, x in enumerate(v):
        if abs(x) > cutoff:
            v = v * (abs(x) / x)
            v[k] = abs(x)
            return v
    return v


def _eigvec(a, b, c, d, lam):
    # two rows of (M - lam I) give two candidate null vectors; keep the better conditioned
    u1 = np.array([b, lam - a])
    u2 = np.array([lam - d, c])
    best = u1 if np.linalg.norm(u1) >= np.linalg.norm(u2) else u2
    if np.linalg.norm(best) <= 1e-14:
        return None
    return _fix_phase(best)


def _ordered(l1, l2, tie=1e-12):
    # larger real part first; real parts within `tie` (unit-norm scale) count as equal
    if abs(l1.real - l2.real) > tie:
        return (l1, l2) if l1.real > l2.real else (l2, l1)
    return (l1, l2) if l1.imag >= l2.imag else (l2, l1)


def eig2(m, tol_def: float = TOL_DEFECTIVE) -> EigenPair2:
    """Closed-form eigenpairs of a 2 x 2 matrix from its characteristic polynomial.

    The eigenvalues are ``mean +/- sqrt(disc)`` with ``disc = ((a - d)/2)**2 + b*c``.
    A discriminant within ``tol_def * ||M||_F**2`` of zero with a rank-one
    ``M - lambda I`` is reported as defective instead of raising.
    """
    m = as_cmat(m)
    if m.shape != (2, 2):
        raise DimensionError("eig2 needs a 2 x 2 matrix")
    big_entry = float(np.max(np.abs(m)))
    if big_entry == 0:
        zero = np.array([1, 0], dtype=np.complex128), np.array([0, 1], dtype=np.complex128)
        return EigenPair2(0j, 0j, *zero, False)
    # exact power-of-two rescale, then unit Frobenius norm: squares cannot under/overflow
    exponent = math.frexp(big_entry)[1]
    unit = np.ldexp(m.real, -exponent) + 1j * np.ldexp(m.imag, -exponent)
    unit_norm = float(np.linalg.norm(unit))
    unit = unit / unit_norm
    scale = math.ldexp(unit_norm, exponent)
    a, b, c, d = (complex(x) for x in unit.ravel())
    mean = 0.5 * (a + d)
    half = 0.5 * (a - d)
    disc = half * half + b * c

    if abs(disc) < tol_def:
        lam = mean
        if np.linalg.norm(unit - lam * np.eye(2)) > tol_def:
            v = _eigvec(a, b, c, d, lam)
            lam = 0.5 * (complex(m[0, 0]) + complex(m[1, 1]))
            return EigenPair2(lam, lam, v, v.copy(), True)

    root = cmath.sqrt(disc)
    big = mean + root if abs(mean + root) >= abs(mean - root) else mean - root
    small = (a * d - b * c) / big if big != 0 else mean - (big - mean)
    lp, lm = _ordered(big, small)

    vp = _eigvec(a, b, c, d, lp)
    vm = _eigvec(a, b, c, d, lm)
    if vp is None or vm is None:
        # M is a multiple of the identity
        vp = np.array([1, 0], dtype=np.complex128)
        vm = np.array([0, 1], dtype=np.complex128)
    return EigenPair2(_rescale(lp, scale), _rescale(lm, scale), vp, vm, False)


def _rescale(z: complex, scale: float) -> complex:
    return complex(z.real * scale, z.imag * scale)


def expm(m) -> np.ndarray:
    """Matrix exponential by scaling and squaring of a degree-18 Taylor series.

    Deliberately independent of :func:`eig2`; used as the time-evolution oracle.
    """
    return kernels.expm(as_cmat(m))


def real_null_space(r, tol: float = TOL_NULL_SPACE) -> list[np.ndarray]:
    """Orthonormal basis of ``{x : R x = 0}``; singular values below ``tol * s_max`` count as zero."""
    r = np.atleast_2d(np.asarray(r, dtype=np.float64))
    if not np.all(np.isfinite(r)):
        raise ValueError("null-space input has non-finite entries")
    ncols = r.shape[1]
    _, s, vt = np.linalg.svd(r, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return [vt[i].copy() for i in range(rank, ncols)]
