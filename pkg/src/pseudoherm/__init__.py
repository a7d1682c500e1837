"""Pseudo-Hermitian two-flavour mass mixing: metric operators, spectral regimes,
flavour-state evolution and positive, unitary oscillation probabilities."""
from .dynamics import (
    FlavourState,
    ProbabilityRecord,
    StateLabel,
    a_conjugate,
    closed_form_p12,
    flavour_state,
    hermitian_p12,
    hermitian_probabilities,
    mass_eigenstates,
    naive_probability,
    oracle_evolve,
    oscillation_probability,
    survival_probability,
)
from .errors import ConfigError, DimensionError, RegimeError, SingularMetricError, TachyonicModeError
from .kernels import BACKEND
from .linalg import EigenPair2, adjoint, commutator, eig2, expm, real_null_space
from .metric import (
    Definiteness,
    MassParams,
    MetricOp,
    MetricSpace,
    Regime,
    SpectralData,
    build_A,
    build_P,
    build_PA,
    dual_state,
    eta_inner,
    hermitian_mass_matrix,
    mass_matrix,
    solve_metrics,
    spectral,
    verify_pseudo_hermiticity,
)
from .scan import ScanConfig, ScanMode, read_csv, run_scan, write_csv

__version__ = "0.1.0"
