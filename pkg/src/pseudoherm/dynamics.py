"""Mass and flavour states, their time evolution, and transition probabilities.

Probabilities follow the two-pairing form ``<a|b>_eta <b|a>_eta`` rather than
``|<a|b>_eta|**2`` so the naive construction shows its pathology unaltered.
Time evolution of a mass eigenstate is the phase ``exp(+i m t)``.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import RegimeError, TachyonicModeError
from .linalg import eig2, expm
from .metric import (
    MassParams,
    SpectralData,
    build_A,
    build_P,
    build_PA,
    eta_inner,
    hermitian_eigenvalues,
    hermitian_mass_matrix,
)


class StateLabel(enum.Enum):
    FLAVOUR_1 = "Flavour1"
    FLAVOUR_2 = "Flavour2"
    MASS_PLUS = "MassPlus"
    MASS_MINUS = "MassMinus"


@dataclass(frozen=True)
class FlavourState:
    amplitudes: np.ndarray
    label: StateLabel
    time: float = 0.0


class ProbabilityRecord(NamedTuple):
    zeta: float
    x: float
    p11: float
    p12: float
    p11_herm: float
    p12_herm: float


def _eigen_amplitudes(zeta: float) -> tuple[np.ndarray, np.ndarray]:
    if zeta == 0.0:
        return np.array([1, 0], dtype=np.complex128), np.array([0, 1], dtype=np.complex128)
    s = math.sqrt(1.0 - zeta * zeta)
    # N zeta and N (1 - s) in a form that neither cancels nor underflows as zeta -> 0
    big = math.copysign(math.sqrt(0.5 * (1.0 + s)), zeta)
    small = abs(zeta) / math.sqrt(2.0 * (1.0 + s))
    plus = np.array([big, -small], dtype=np.complex128)
    minus = np.array([-small, big], dtype=np.complex128)
    return plus, minus


def mass_eigenstates(zeta: float) -> tuple[FlavourState, FlavourState]:
    """Eigenstates N (zeta, -1 + sqrt(1 - zeta^2)) and N (-1 + sqrt(1 - zeta^2), zeta).

    N = [2 (1 - sqrt(1 - zeta^2))]^(-1/2) makes both Euclidean unit vectors.
    """
    if not abs(zeta) < 1:
        raise RegimeError(f"mass eigenstates need |zeta| < 1, got {zeta}")
    if zeta == 0.0:
        raise ValueError("normalization diverges at zeta = 0; use the standard basis")
    plus, minus = _eigen_amplitudes(zeta)
    return FlavourState(plus, StateLabel.MASS_PLUS), FlavourState(minus, StateLabel.MASS_MINUS)


def flavour_state(label: StateLabel, t: float, sd: SpectralData) -> FlavourState:
    """Flavour state 1 or 2 at time ``t``, built from phase-evolved mass eigenstates.

    phi_1(t) = cosh(theta) e^{i m+ t} phi_+ + sinh(theta) e^{i m- t} phi_-
    phi_2(t) = cosh(theta) e^{i m- t} phi_- + sinh(theta) e^{i m+ t} phi_+
    so that phi_1(0) ~ (1, 0) and phi_2(0) ~ (0, 1).
    """
    sd.require_unbroken("flavour_state")
    plus, minus = _eigen_amplitudes(sd.zeta)
    ch, sh = math.cosh(sd.theta), math.sinh(sd.theta)
    ep = cmath.exp(1j * sd.m_plus.real * t)
    em = cmath.exp(1j * sd.m_minus.real * t)
    if label is StateLabel.FLAVOUR_1:
        amps = (ch * ep) * plus + (sh * em) * minus
    elif label is StateLabel.FLAVOUR_2:
        amps = (sh * ep) * plus + (ch * em) * minus
    else:
        raise ValueError(f"{label} is not a flavour label")
    return FlavourState(amps, label, float(t))


def a_conjugate(state: FlavourState, zeta: float) -> FlavourState:
    return FlavourState(build_A(zeta) @ state.amplitudes, state.label, state.time)


def _pairing_product(a: np.ndarray, b: np.ndarray, eta) -> float:
    return (eta_inner(a, b, eta) * eta_inner(b, a, eta)).real


def oscillation_probability(sd: SpectralData, t: float, t0: float, conjugated: int = 2) -> float:
    """P(1 -> 2) from explicit states in the PA-orthonormal flavour basis.

    ``conjugated`` picks which flavour state carries the A action: 2 uses
    {phi_1, A phi_2}, 1 uses {A phi_1, phi_2}. Both give the same value.
    """
    sd.require_unbroken("oscillation_probability")
    pa = build_PA(sd.zeta)
    phi1 = flavour_state(StateLabel.FLAVOUR_1, t0, sd)
    phi2 = flavour_state(StateLabel.FLAVOUR_2, t, sd)
    if conjugated == 2:
        phi2 = a_conjugate(phi2, sd.zeta)
    elif conjugated == 1:
        phi1 = a_conjugate(phi1, sd.zeta)
    else:
        raise ValueError("conjugated must be 1 or 2")
    return _pairing_product(phi2.amplitudes, phi1.amplitudes, pa)


def survival_probability(sd: SpectralData, t: float, t0: float) -> float:
    sd.require_unbroken("survival_probability")
    pa = build_PA(sd.zeta)
    now = flavour_state(StateLabel.FLAVOUR_1, t, sd)
    then = flavour_state(StateLabel.FLAVOUR_1, t0, sd)
    return _pairing_product(now.amplitudes, then.amplitudes, pa)


def closed_form_p12(zeta: float, x: float) -> float:
    """zeta^2 sin^2(x), x = dw dt / 2."""
    if abs(zeta) > 1:
        raise RegimeError(f"closed form holds for |zeta| <= 1, got {zeta}")
    s = math.sin(x)
    return zeta * zeta * (s * s)


def hermitian_p12(zeta: float, x: float) -> float:
    s = math.sin(x)
    h = zeta * zeta / (1.0 + zeta * zeta)
    return h * (s * s)


def _metric_choice(eta_choice, zeta):
    name = str(eta_choice).upper()
    if name == "P":
        return build_P()
    if name == "PA":
        return build_PA(zeta)
    raise ValueError(f"eta_choice must be 'P' or 'PA', got {eta_choice!r}")


def naive_probability(sd: SpectralData, i: int, j: int, t: float, t0: float, eta_choice="PA") -> float:
    """<phi_j(t)|phi_i(t0)>_eta <phi_i(t0)|phi_j(t)>_eta with the raw flavour states.

    No range guarantee: the raw states are not orthonormal under either metric.
    """
    sd.require_unbroken("naive_probability")
    eta = _metric_choice(eta_choice, sd.zeta)
    labels = {1: StateLabel.FLAVOUR_1, 2: StateLabel.FLAVOUR_2}
    start = flavour_state(labels[i], t0, sd)
    end = flavour_state(labels[j], t, sd)
    return _pairing_product(end.amplitudes, start.amplitudes, eta)


def effective_hamiltonian(sd: SpectralData) -> np.ndarray:
    """S diag(m+, m-) S^-1: the frequency operator whose square is M^2."""
    sd.require_unbroken("effective_hamiltonian")
    s = sd.S
    return s @ np.diag([sd.m_plus.real, sd.m_minus.real]) @ np.linalg.inv(s)


def oracle_evolve(sd: SpectralData, psi0, dt: float) -> np.ndarray:
    """expm(+i H_eff dt) psi0; independent of the closed-form state construction."""
    h = effective_hamiltonian(sd)
    return expm(1j * dt * h) @ np.asarray(psi0, dtype=np.complex128)


def time_for_phase(sd: SpectralData, x: float) -> float:
    """Elapsed time dt with dw dt / 2 = x."""
    sd.require_unbroken("time_for_phase")
    return 2.0 * x / sd.delta_omega


def hermitian_probabilities(p: MassParams, t: float, t0: float) -> tuple[float, float]:
    """(P11, P12) of the symmetric-mixing analogue under the ordinary inner product."""
    mp_sq, mm_sq = hermitian_eigenvalues(p)
    if mm_sq < 0:
        raise TachyonicModeError(f"m_minus_herm^2 = {mm_sq} < 0; Hermitian frequencies are imaginary")
    pair = eig2(hermitian_mass_matrix(p))
    dt = t - t0
    u = (
        cmath.exp(1j * math.sqrt(mp_sq) * dt) * np.outer(pair.v_plus, pair.v_plus.conj())
        + cmath.exp(1j * math.sqrt(mm_sq) * dt) * np.outer(pair.v_minus, pair.v_minus.conj())
    )
    a11 = u[0, 0]
    a12 = u[1, 0]
    return float((a11.conjugate() * a11).real), float((a12.conjugate() * a12).real)
