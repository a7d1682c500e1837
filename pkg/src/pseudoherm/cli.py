"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/config error, 3 regime error.
All output is ``key=value`` lines with shortest round-trip numbers.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .dynamics import hermitian_probabilities, naive_probability, oscillation_probability, survival_probability
from .errors import ConfigError, RegimeError, ScanIOError
from .metric import MassParams, Regime, hermitian_mass_matrix, mass_matrix, solve_metrics, spectral
from .numfmt import format_complex, format_number
from .scan import ScanConfig, ScanMode, run_scan, write_csv
from .verification import run_checks

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_REGIME = 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def format_matrix(m, chop: float = 1e-13) -> str:
    m = np.asarray(m)
    cutoff = chop * max(float(np.max(np.abs(m))), 1e-300)
    rows = []
    for row in m:
        cells = []
        for z in row:
            z = complex(z)
            z = complex(z.real if abs(z.real) > cutoff else 0.0, z.imag if abs(z.imag) > cutoff else 0.0)
            cells.append(format_complex(z))
        rows.append("[" + ",".join(cells) + "]")
    return "[" + ",".join(rows) + "]"


def _emit(out, key, value):
    out.write(f"{key}={value}\n")


def _params(args) -> MassParams:
    try:
        return MassParams(args.m1sq, args.m2sq, args.m5sq)
    except ValueError as exc:
        raise _Fail(EXIT_USAGE, f"invalid mass parameters: {exc}") from None


def cmd_classify(args, out):
    sd = spectral(_params(args))
    _emit(out, "regime", sd.regime)
    _emit(out, "zeta", format_number(sd.zeta))
    _emit(out, "discriminant", format_number(sd.discriminant))
    _emit(out, "m_plus_sq", format_complex(sd.m_plus_sq))
    _emit(out, "m_minus_sq", format_complex(sd.m_minus_sq))


def cmd_spectrum(args, out):
    sd = spectral(_params(args))
    cmd_classify(args, out)
    _emit(out, "m_plus", format_complex(sd.m_plus))
    _emit(out, "m_minus", format_complex(sd.m_minus))
    if sd.regime is Regime.UNBROKEN:
        _emit(out, "delta_omega", format_number(sd.delta_omega))
        _emit(out, "theta", format_number(sd.theta))
        _emit(out, "S", format_matrix(sd.S))


def cmd_probs(args, out):
    p = _params(args)
    sd = spectral(p)
    if sd.regime is not Regime.UNBROKEN:
        raise _Fail(EXIT_REGIME, f"probabilities need the Unbroken regime; parameters are in the {sd.regime} regime")
    _emit(out, "p11", format_number(survival_probability(sd, args.t, args.t0)))
    _emit(out, "p12", format_number(oscillation_probability(sd, args.t, args.t0)))
    if args.naive:
        for eta in ("P", "PA"):
            for i in (1, 2):
                for j in (1, 2):
                    value = naive_probability(sd, i, j, args.t, args.t0, eta)
                    _emit(out, f"naive_{eta}_p{i}{j}", format_number(value))
    if args.hermitian:
        try:
            h11, h12 = hermitian_probabilities(p, args.t, args.t0)
        except RegimeError as exc:
            raise _Fail(EXIT_REGIME, str(exc)) from None
        _emit(out, "p11_herm", format_number(h11))
        _emit(out, "p12_herm", format_number(h12))


def cmd_metrics(args, out):
    p = _params(args)
    h = hermitian_mass_matrix(p) if args.hermitian else mass_matrix(p)
    space = solve_metrics(h)
    _emit(out, "hamiltonian", "hermitian" if args.hermitian else "pseudo-hermitian")
    _emit(out, "dimension", space.dimension)
    for k, op in enumerate(space, start=1):
        _emit(out, f"metric_{k}", format_matrix(op.eta))
        _emit(out, f"definiteness_{k}", op.definiteness)
    _emit(out, "identity_in_span", "yes" if space.residual(np.eye(h.shape[0])) < 1e-9 else "no")
    _emit(out, "positive_definite", "yes" if space.has_positive_definite else "no")
    if space.has_positive_definite:
        _emit(out, "positive_definite_metric", format_matrix(space.positive_definite.eta))


def cmd_scan(args, out):
    try:
        cfg = ScanConfig(
            zeta_min=args.zeta_min,
            zeta_max=args.zeta_max,
            zeta_steps=args.zeta_steps,
            x_min=args.x_min,
            x_max=args.x_max,
            x_steps=args.x_steps,
            mode=ScanMode.STATE_BASED if args.state_based else ScanMode.CLOSED_FORM,
        )
        records = run_scan(cfg, workers=args.workers)
        nbytes = write_csv(records, args.out)
    except (ConfigError, ScanIOError) as exc:
        raise _Fail(EXIT_USAGE, str(exc)) from None
    _emit(out, "records", len(records))
    _emit(out, "bytes", nbytes)
    _emit(out, "path", args.out)


def cmd_verify(args, out):
    results = run_checks(args.tol)
    for r in results:
        out.write(r.line() + "\n")
    if not all(r.passed for r in results):
        raise _Fail(EXIT_VERIFY_FAILED, "verification failed")


def _mass_flags(p):
    p.add_argument("--m1sq", type=finite_float, required=True, help="m1^2 (energy^2)")
    p.add_argument("--m2sq", type=finite_float, required=True, help="m2^2 (energy^2)")
    p.add_argument("--m5sq", type=finite_float, required=True, help="m5^2 (energy^2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudoherm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="spectral regime of the squared mass matrix")
    _mass_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", help="eigenvalues, frequencies and mixing matrix")
    _mass_flags(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("probs", help="survival and oscillation probabilities")
    _mass_flags(p)
    p.add_argument("--t", type=finite_float, required=True)
    p.add_argument("--t0", type=finite_float, required=True)
    p.add_argument("--naive", action="store_true", help="also print naive P- and PA-metric values")
    p.add_argument("--hermitian", action="store_true", help="also print the Hermitian analogue")
    p.set_defaults(func=cmd_probs)

    p = sub.add_parser("metrics", help="solve for all Hermitian metrics of the mass matrix")
    _mass_flags(p)
    p.add_argument("--hermitian", action="store_true", help="use the symmetric-mixing analogue")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("scan", help="write a (zeta, x) probability grid as CSV")
    p.add_argument("--zeta-min", type=finite_float, default=-1.0)
    p.add_argument("--zeta-max", type=finite_float, default=1.0)
    p.add_argument("--zeta-steps", type=positive_int, default=41)
    p.add_argument("--x-min", type=finite_float, default=0.0)
    p.add_argument("--x-max", type=finite_float, default=2 * math.pi)
    p.add_argument("--x-steps", type=positive_int, default=41)
    p.add_argument("--out", required=True, help="CSV destination")
    p.add_argument("--state-based", action="store_true", help="build probabilities from explicit states")
    p.add_argument("--workers", type=positive_int, default=1, help="threads for grid evaluation")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--tol", type=finite_float, default=None, help="override every residual tolerance")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args, sys.stdout)
    except _Fail as exc:
        if exc.code != EXIT_VERIFY_FAILED:
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
