"""Invariant checks run by ``pseudoherm verify``.

Each check returns the worst residual it measured; a check passes when that
residual is within its tolerance (or, for existence checks, beyond a threshold).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    StateLabel,
    flavour_state,
    naive_probability,
    oracle_evolve,
    oscillation_probability,
    survival_probability,
)
from .linalg import adjoint, commutator, eig2
from .metric import (
    MassParams,
    Regime,
    build_A,
    build_P,
    build_PA,
    classify_regime,
    mass_matrix,
    spectral,
    spectral_from_entries,
    solve_metrics,
    verify_pseudo_hermiticity,
    eta_inner,
)
from .numfmt import format_number

SEED = 20240601
N_DRAWS = 100
GRID_ZETA = np.linspace(-0.95, 0.95, 50)
GRID_PHASE = np.linspace(0.0, 4 * math.pi, 50)  # dw * dt
T0 = 1.3


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tol: float
    passed: bool
    comparison: str = "<="

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} worst={format_number(self.worst)} {self.comparison} {format_number(self.tol)}"


def random_unbroken_params(count: int = N_DRAWS, seed: int = SEED) -> list[MassParams]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m2 = rng.uniform(0.1, 3.0)
        gap = rng.uniform(0.1, 3.0)
        zeta = rng.uniform(0.01, 0.98)
        out.append(MassParams(m2 + gap, m2, 0.5 * zeta * gap))
    return out


def realize(zeta: float):
    """Spectral data for zeta with m1^2 = 2, m2^2 = 1."""
    return spectral_from_entries(2.0, 1.0, 0.5 * zeta)


def algebra_residuals(params: list[MassParams]) -> dict[str, float]:
    worst = dict.fromkeys(
        ["A_squared", "AT_P_A", "commutator_M2_A", "P_pseudo_hermiticity", "PA_pseudo_hermiticity", "S_diagonalizes"],
        0.0,
    )
    eye = np.eye(2)
    p_mat = build_P().eta
    for p in params:
        m = mass_matrix(p)
        mnorm = np.linalg.norm(m)
        a = build_A(p.zeta)
        sd = spectral(p)
        vals = {
            "A_squared": np.linalg.norm(a @ a - eye),
            "AT_P_A": np.linalg.norm(a.T @ p_mat @ a - p_mat),
            "commutator_M2_A": np.linalg.norm(commutator(m, a)) / mnorm,
            "P_pseudo_hermiticity": np.linalg.norm(adjoint(m) - p_mat @ m @ np.linalg.inv(p_mat)) / mnorm,
            "PA_pseudo_hermiticity": verify_pseudo_hermiticity(m, build_PA(p.zeta)),
            "S_diagonalizes": np.linalg.norm(
                np.linalg.inv(sd.S) @ m @ sd.S - np.diag([sd.m_plus_sq, sd.m_minus_sq])
            )
            / mnorm,
        }
        for k, v in vals.items():
            worst[k] = max(worst[k], float(v))
    return worst


def unitarity_and_closed_form() -> tuple[float, float, float]:
    """(worst |P11 + P12 - 1|, most negative probability, worst |P12 - zeta^2 sin^2|)."""
    sum_err = closed_err = 0.0
    lowest = math.inf
    for z in GRID_ZETA:
        sd = realize(z)
        for phase in GRID_PHASE:
            dt = phase / sd.delta_omega
            p12 = oscillation_probability(sd, T0 + dt, T0)
            p11 = survival_probability(sd, T0 + dt, T0)
            sum_err = max(sum_err, abs(p11 + p12 - 1))
            lowest = min(lowest, p11, p12)
            closed_err = max(closed_err, abs(p12 - float(z) ** 2 * math.sin(phase / 2) ** 2))
    return sum_err, lowest, closed_err


def oracle_probabilities(sd, t: float, t0: float) -> tuple[float, float]:
    """(P11, P12) with every time-dependent state produced by ``oracle_evolve``."""
    pa = build_PA(sd.zeta)
    a = build_A(sd.zeta)
    f1 = flavour_state(StateLabel.FLAVOUR_1, 0.0, sd).amplitudes
    f2 = flavour_state(StateLabel.FLAVOUR_2, 0.0, sd).amplitudes
    f1_t0 = oracle_evolve(sd, f1, t0)
    f1_t = oracle_evolve(sd, f1, t)
    f2a_t = a @ oracle_evolve(sd, f2, t)
    p12 = (eta_inner(f2a_t, f1_t0, pa) * eta_inner(f1_t0, f2a_t, pa)).real
    p11 = (eta_inner(f1_t, f1_t0, pa) * eta_inner(f1_t0, f1_t, pa)).real
    return p11, p12


def oracle_equivalence(n: int = 20) -> float:
    worst = 0.0
    for z in np.linspace(-0.95, 0.95, n):
        sd = realize(z)
        for phase in np.linspace(0.0, 4 * math.pi, n):
            t = T0 + phase / sd.delta_omega
            o11, o12 = oracle_probabilities(sd, t, T0)
            worst = max(
                worst,
                abs(o12 - oscillation_probability(sd, t, T0)),
                abs(o11 - survival_probability(sd, t, T0)),
            )
    return worst


def naive_pathology() -> float:
    """Largest excursion of a naive probability outside [0, 1] or of a naive row sum from 1."""
    worst = 0.0
    for z in np.arange(0.3, 0.951, 0.05):
        sd = realize(z)
        for phase in np.linspace(0.0, 4 * math.pi, 50):
            t = T0 + phase / sd.delta_omega
            for eta in ("P", "PA"):
                for i in (1, 2):
                    row = [naive_probability(sd, i, j, t, T0, eta) for j in (1, 2)]
                    worst = max(worst, abs(sum(row) - 1), *(max(-v, v - 1) for v in row))
    return worst


def regime_mismatches() -> int:
    """Count sweep points whose regime, eig2 flag or broken-regime norms disagree."""
    bad = 0
    p_mat = build_P()
    for zeta in np.concatenate([np.linspace(0.5, 1.5, 201), [1.0]]):
        m5 = 0.5 * zeta
        disc = 0.25 - m5 * m5
        regime = classify_regime(2.0, 1.0, m5)
        pair = eig2(mass_matrix(MassParams(2.0, 1.0, m5)))
        if regime is Regime.EXCEPTIONAL:
            bad += not pair.defective
        elif regime is Regime.UNBROKEN:
            bad += not disc > 0
        else:
            bad += not disc < 0
            bad += abs(pair.lambda_plus - pair.lambda_minus.conjugate()) > 1e-12
            bad += abs(eta_inner(pair.v_plus, pair.v_plus, p_mat)) > 1e-12
            bad += abs(eta_inner(pair.v_minus, pair.v_minus, p_mat)) > 1e-12
    return bad


def metric_solver_residual() -> tuple[float, bool]:
    """(worst span-membership residual of P and PA, positive-definite outcomes as expected)."""
    space = solve_metrics(mass_matrix(MassParams(2.0, 1.0, 0.3)))
    worst = max(space.residual(build_P().eta), space.residual(build_PA(0.6).eta))
    if space.dimension < 2:
        worst = math.inf
    broken = solve_metrics(mass_matrix(MassParams(2.0, 1.0, 0.75)))
    return worst, space.has_positive_definite and not broken.has_positive_definite


def run_checks(tol: float | None = None) -> list[CheckResult]:
    """All check groups; ``tol`` overrides every residual tolerance."""

    def residual(name, worst, default):
        t = default if tol is None else tol
        return CheckResult(name, worst, t, bool(worst <= t))

    results = []
    for name, worst in algebra_residuals(random_unbroken_params()).items():
        results.append(residual(name, worst, 1e-12))

    sum_err, lowest, closed_err = unitarity_and_closed_form()
    results.append(residual("unitarity_grid", sum_err, 1e-12))
    results.append(residual("positivity_grid", max(0.0, -lowest), 1e-12))
    results.append(residual("closed_form_agreement", closed_err, 1e-12))
    results.append(residual("oracle_equivalence", oracle_equivalence(), 1e-9))

    dev = naive_pathology()
    results.append(CheckResult("naive_pathology", dev, 0.01, dev > 0.01, ">"))

    mism = regime_mismatches()
    results.append(CheckResult("regime_trichotomy", float(mism), 0.0, mism == 0))

    member, pd_ok = metric_solver_residual()
    t = 1e-9 if tol is None else tol
    results.append(CheckResult("metric_solver", member, t, bool(member <= t and pd_ok)))
    return results

