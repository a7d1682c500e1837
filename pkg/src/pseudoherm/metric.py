"""Model matrices, spectral regimes and metric operators of the two-flavour mass mixing."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, RegimeError, SingularMetricError
from .linalg import adjoint, as_cmat, real_null_space, TOL_NULL_SPACE

# |discriminant| below this fraction of ((m1^2 - m2^2)/2)^2 is an exceptional point
TOL_EXCEPTIONAL = 1e-9
TOL_HERMITIAN = 1e-12
PD_GRID_STEP = 0.05
PD_GRID_MAX_POINTS = 200_000


class Regime(enum.Enum):
    UNBROKEN = "Unbroken"
    BROKEN = "Broken"
    EXCEPTIONAL = "Exceptional"

    def __str__(self):
        return self.value


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    INDEFINITE = "Indefinite"
    SINGULAR = "Singular"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MassParams:
    """Squared masses m1^2, m2^2, m5^2 with m1^2 > m2^2 > 0 and m5^2 > 0."""

    m1_sq: float
    m2_sq: float
    m5_sq: float

    def __post_init__(self):
        for name in ("m1_sq", "m2_sq", "m5_sq"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not self.m1_sq > self.m2_sq:
            raise ValueError(f"need m1_sq > m2_sq, got {self.m1_sq} <= {self.m2_sq}")
        if not self.m2_sq > 0:
            raise ValueError(f"need m2_sq > 0, got {self.m2_sq}")
        if not self.m5_sq > 0:
            raise ValueError(f"need m5_sq > 0, got {self.m5_sq}")

    @property
    def zeta(self) -> float:
        return 2.0 * self.m5_sq / (self.m1_sq - self.m2_sq)


@dataclass(frozen=True)
class SpectralData:
    """Eigen-data of the squared mass matrix.

    ``theta`` and ``S`` are ``None`` outside the unbroken regime.
    """

    m1_sq: float
    m2_sq: float
    m5_sq: float
    zeta: float
    discriminant: float
    m_plus_sq: complex
    m_minus_sq: complex
    m_plus: complex
    m_minus: complex
    theta: float | None
    S: np.ndarray | None = field(repr=False)
    regime: Regime

    @property
    def delta_omega(self) -> float:
        """m_+ - m_- (real part; the imaginary part vanishes in the unbroken regime)."""
        return (self.m_plus - self.m_minus).real

    def require_unbroken(self, what: str = "operation") -> None:
        if self.regime is not Regime.UNBROKEN:
            raise RegimeError(f"{what} needs the Unbroken regime, parameters are {self.regime}")


@dataclass(frozen=True)
class MetricOp:
    eta: np.ndarray
    definiteness: Definiteness

    @classmethod
    def from_matrix(cls, eta) -> MetricOp:
        eta = as_cmat(eta)
        scale = max(1.0, float(np.linalg.norm(eta)))
        if np.linalg.norm(eta - eta.conj().T) > TOL_HERMITIAN * scale:
            raise ValueError("metric operator must be Hermitian")
        eta = 0.5 * (eta + eta.conj().T)
        return cls(eta, classify_definiteness(eta))

    @property
    def n(self) -> int:
        return self.eta.shape[0]


def classify_definiteness(eta, rtol: float = 1e-10) -> Definiteness:
    w = np.linalg.eigvalsh(np.asarray(eta))
    cutoff = rtol * max(np.max(np.abs(w)), np.finfo(float).tiny)
    if np.any(np.abs(w) <= cutoff):
        return Definiteness.SINGULAR
    if np.all(w > 0):
        return Definiteness.POSITIVE_DEFINITE
    if np.all(w < 0):
        return Definiteness.NEGATIVE_DEFINITE
    return Definiteness.INDEFINITE


def _matrix_of(eta) -> np.ndarray:
    return eta.eta if isinstance(eta, MetricOp) else as_cmat(eta)


def mass_matrix(p: MassParams) -> np.ndarray:
    return np.array([[p.m1_sq, p.m5_sq], [-p.m5_sq, p.m2_sq]], dtype=np.complex128)


def hermitian_mass_matrix(p: MassParams) -> np.ndarray:
    return np.array([[p.m1_sq, p.m5_sq], [p.m5_sq, p.m2_sq]], dtype=np.complex128)


def hermitian_eigenvalues(p: MassParams) -> tuple[float, float]:
    """m^2_{+/-,Herm} of the symmetric-mixing analogue."""
    mean = 0.5 * (p.m1_sq + p.m2_sq)
    half = 0.5 * (p.m1_sq - p.m2_sq)
    root = math.sqrt(half * half + p.m5_sq * p.m5_sq)
    return mean + root, mean - root


def classify_regime(m1_sq: float, m2_sq: float, m5_sq: float) -> Regime:
    half = 0.5 * (m1_sq - m2_sq)
    disc = half * half - m5_sq * m5_sq
    if abs(disc) < TOL_EXCEPTIONAL * half * half:
        return Regime.EXCEPTIONAL
    return Regime.UNBROKEN if disc > 0 else Regime.BROKEN


def mixing_matrix(theta: float) -> np.ndarray:
    ch, sh = math.cosh(theta), math.sinh(theta)
    return np.array([[ch, -sh], [-sh, ch]], dtype=np.complex128)


def spectral_from_entries(m1_sq: float, m2_sq: float, m5_sq: float) -> SpectralData:
    """Spectral data for any real entries with m1_sq > m2_sq.

    Unlike :func:`spectral` this skips the positivity constraints of
    :class:`MassParams`, so zero or negative mixing can be realized (used by
    the state-based scan).
    """
    if not m1_sq > m2_sq:
        raise ValueError(f"need m1_sq > m2_sq, got {m1_sq} <= {m2_sq}")
    zeta = 2.0 * m5_sq / (m1_sq - m2_sq)
    mean = 0.5 * (m1_sq + m2_sq)
    half = 0.5 * (m1_sq - m2_sq)
    disc = half * half - m5_sq * m5_sq
    regime = classify_regime(m1_sq, m2_sq, m5_sq)

    if disc >= 0:
        root = complex(math.sqrt(disc))
    else:
        # positive imaginary part on the + branch
        root = complex(0.0, math.sqrt(-disc))
    mp_sq = mean + root
    mm_sq = mean - root

    theta = S = None
    if regime is Regime.UNBROKEN:
        theta = 0.5 * math.atanh(zeta)
        S = mixing_matrix(theta)
    return SpectralData(
        m1_sq=m1_sq,
        m2_sq=m2_sq,
        m5_sq=m5_sq,
        zeta=zeta,
        discriminant=disc,
        m_plus_sq=mp_sq,
        m_minus_sq=mm_sq,
        m_plus=cmath.sqrt(mp_sq),
        m_minus=cmath.sqrt(mm_sq),
        theta=theta,
        S=S,
        regime=regime,
    )


def spectral(p: MassParams) -> SpectralData:
    return spectral_from_entries(p.m1_sq, p.m2_sq, p.m5_sq)


def _require_unbroken_zeta(zeta: float, what: str) -> float:
    if not abs(zeta) < 1:
        raise RegimeError(f"{what} undefined at/beyond the exceptional point (|zeta| = {abs(zeta)} >= 1)")
    return 1.0 / math.sqrt(1.0 - zeta * zeta)


def build_P() -> MetricOp:
    return MetricOp(np.diag([1.0, -1.0]).astype(np.complex128), Definiteness.INDEFINITE)


def build_A(zeta: float) -> np.ndarray:
    k = _require_unbroken_zeta(zeta, "A")
    return k * np.array([[1.0, zeta], [-zeta, -1.0]], dtype=np.complex128)


def build_PA(zeta: float) -> MetricOp:
    k = _require_unbroken_zeta(zeta, "PA")
    return MetricOp.from_matrix(k * np.array([[1.0, zeta], [zeta, 1.0]], dtype=np.complex128))


def verify_pseudo_hermiticity(h, eta) -> float:
    """Relative residual ||H^dagger eta - eta H|| / ||eta H||; zero for an eta-pseudo-Hermitian H."""
    h = as_cmat(h)
    op = eta if isinstance(eta, MetricOp) else MetricOp.from_matrix(eta)
    if op.eta.shape != h.shape:
        raise DimensionError(f"metric {op.eta.shape} does not match Hamiltonian {h.shape}")
    if op.definiteness is Definiteness.SINGULAR:
        raise SingularMetricError("metric operator is singular")
    eh = op.eta @ h
    denom = np.linalg.norm(eh)
    if denom == 0:
        return 0.0
    return float(np.linalg.norm(adjoint(h) @ op.eta - eh) / denom)


def eta_inner(u, v, eta) -> complex:
    """<u|v>_eta = u^dagger eta v."""
    m = _matrix_of(eta)
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != (m.shape[0],) or v.shape != (m.shape[0],):
        raise DimensionError(f"vectors {u.shape}, {v.shape} do not match metric {m.shape}")
    return complex(u.conj() @ m @ v)


def dual_state(v, pi) -> np.ndarray:
    """Row covector v^dagger pi; ``dual_state(v, pi) @ u == eta_inner(v, u, pi)``."""
    m = _matrix_of(pi)
    if np.linalg.norm(m - m.conj().T) > TOL_HERMITIAN * max(1.0, float(np.linalg.norm(m))):
        raise ValueError("pi must be Hermitian")
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (m.shape[0],):
        raise DimensionError(f"vector {v.shape} does not match metric {m.shape}")
    return v.conj() @ m


# --- metric solution spaces -------------------------------------------------


def hermitian_basis(n: int) -> list[np.ndarray]:
    """Frobenius-orthonormal real basis of n x n Hermitian matrices (n^2 elements)."""
    basis = []
    for k in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[k, k] = 1
        basis.append(e)
    r = 1 / math.sqrt(2)
    for k in range(n):
        for l in range(k + 1, n):
            e = np.zeros((n, n), dtype=np.complex128)
            e[k, l] = e[l, k] = r
            basis.append(e)
            e = np.zeros((n, n), dtype=np.complex128)
            e[k, l] = 1j * r
            e[l, k] = -1j * r
            basis.append(e)
    return basis


def hermitian_coordinates(eta) -> np.ndarray:
    m = as_cmat(eta)
    return np.array([np.vdot(b, m).real for b in hermitian_basis(m.shape[0])])


@dataclass(frozen=True)
class MetricSpace:
    """Real solution space of ``H^dagger eta = eta H`` over Hermitian eta."""

    basis: list[MetricOp]
    coords: np.ndarray  # (dimension, n^2), orthonormal rows
    positive_definite: MetricOp | None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def has_positive_definite(self) -> bool:
        return self.positive_definite is not None

    def residual(self, eta) -> float:
        """Relative distance of ``eta`` from the span (0 for a member)."""
        c = hermitian_coordinates(eta)
        nrm = np.linalg.norm(c)
        if nrm == 0:
            return 0.0
        proj = self.coords.T @ (self.coords @ c) if self.dimension else np.zeros_like(c)
        return float(np.linalg.norm(c - proj) / nrm)

    def __len__(self):
        return self.dimension

    def __iter__(self):
        return iter(self.basis)


def _constraint_matrix(h: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    hd = h.conj().T
    cols = []
    for b in basis:
        c = hd @ b - b @ h
        cols.append(np.concatenate([c.real.ravel(), c.imag.ravel()]))
    return np.column_stack(cols)


def _sphere_grid(d: int, step: float) -> np.ndarray:
    """Deterministic points on the unit sphere in R^d from a hyperspherical angle grid."""
    if d == 1:
        return np.array([[1.0], [-1.0]])
    polar = np.arange(0.0, math.pi + 0.5 * step, step)
    azimuth = np.arange(0.0, 2 * math.pi, step)
    grids = np.meshgrid(*([polar] * (d - 2) + [azimuth]), indexing="ij")
    angles = np.stack([g.ravel() for g in grids], axis=1)
    pts = np.ones((angles.shape[0], d))
    for k in range(d - 1):
        pts[:, k] *= np.cos(angles[:, k])
        pts[:, k + 1 :] *= np.sin(angles[:, k])[:, None]
    return pts


def _grid_step(d: int) -> float:
    step = PD_GRID_STEP
    while d > 1 and (math.pi / step + 1) ** (d - 2) * (2 * math.pi / step) > PD_GRID_MAX_POINTS:
        step *= 1.25
    return step


def _is_pd(w: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(w), axis=-1)
    return np.min(w, axis=-1) > 1e-10 * scale


def _search_positive_definite(n: int, coords: np.ndarray, herm: list[np.ndarray]) -> np.ndarray | None:
    d = coords.shape[0]
    if d == 0:
        return None
    flat_basis = np.array([b.ravel() for b in herm])  # (n^2, n*n)
    mats = coords @ flat_basis  # (d, n*n)

    # first candidate: projection of the identity onto the span
    ci = hermitian_coordinates(np.eye(n))
    proj = coords.T @ (coords @ ci)
    if np.linalg.norm(ci - proj) < 1e-9 * np.linalg.norm(ci):
        return np.eye(n, dtype=np.complex128)
    cand = (proj @ flat_basis).reshape(n, n)
    if np.linalg.norm(cand) > 0 and _is_pd(np.linalg.eigvalsh(cand)):
        return cand

    pts = _sphere_grid(d, _grid_step(d))
    for start in range(0, pts.shape[0], 20_000):
        chunk = (pts[start : start + 20_000] @ mats).reshape(-1, n, n)
        ok = _is_pd(np.linalg.eigvalsh(chunk))
        if np.any(ok):
            return chunk[int(np.argmax(ok))]
    return None


def solve_metrics(h, tol: float = TOL_NULL_SPACE) -> MetricSpace:
    """All Hermitian eta with ``H^dagger eta = eta H``, as a basis plus a positive-definite witness.

    The witness search tries the projection of the identity first, then scans a
    fixed hyperspherical grid of basis combinations (angular step 0.05).
    """
    h = as_cmat(h)
    n = h.shape[0]
    herm = hermitian_basis(n)
    r = _constraint_matrix(h, herm)
    null = real_null_space(r, tol)
    coords = np.array(null).reshape(len(null), n * n)
    basis = [MetricOp.from_matrix(sum(c * b for c, b in zip(vec, herm))) for vec in null]

    pd = _search_positive_definite(n, coords, herm)
    witness = None
    if pd is not None:
        pd = pd * (n / np.trace(pd).real)
        witness = MetricOp.from_matrix(pd)
    return MetricSpace(basis, coords, witness)
