"""Probability grids over (zeta, x = dw dt / 2) and their CSV serialization."""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .dynamics import ProbabilityRecord
from .errors import ConfigError, ScanIOError
from .numfmt import format_number

CSV_HEADER = "zeta,x,p11_pseudo,p12_pseudo,p11_herm,p12_herm"


class ScanMode(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    STATE_BASED = "StateBased"


@dataclass(frozen=True)
class ScanConfig:
    zeta_min: float = -1.0
    zeta_max: float = 1.0
    zeta_steps: int = 41
    x_min: float = 0.0
    x_max: float = 2 * math.pi
    x_steps: int = 41
    mode: ScanMode = ScanMode.CLOSED_FORM

    def __post_init__(self):
        for name in ("zeta_min", "zeta_max", "x_min", "x_max"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        for name in ("zeta_steps", "x_steps"):
            steps = getattr(self, name)
            if not isinstance(steps, (int, np.integer)) or steps < 2:
                raise ConfigError(f"{name} must be an integer >= 2, got {steps!r}")
        if not self.zeta_min < self.zeta_max:
            raise ConfigError("need zeta_min < zeta_max")
        if not self.x_min < self.x_max:
            raise ConfigError("need x_min < x_max")
        if self.mode is ScanMode.STATE_BASED:
            if not (-1 < self.zeta_min and self.zeta_max < 1):
                raise ConfigError("StateBased mode needs zeta inside (-1, 1); endpoints +/-1 are excluded")
        elif not (-1 <= self.zeta_min and self.zeta_max <= 1):
            raise ConfigError("zeta range must lie within [-1, 1]")

    def zetas(self) -> np.ndarray:
        return np.linspace(self.zeta_min, self.zeta_max, self.zeta_steps)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.x_steps)


def scan_array(cfg: ScanConfig, workers: int = 1, backend=None) -> np.ndarray:
    """Grid as an (n_zeta * n_x, 6) array, zeta-major. Rows are independent of ``workers``."""
    impl = backend or kernels
    grid = impl.closed_form_grid if cfg.mode is ScanMode.CLOSED_FORM else impl.state_based_grid
    zetas, xs = cfg.zetas(), cfg.xs()
    if workers <= 1:
        return grid(zetas, xs)
    chunks = np.array_split(zetas, min(workers, zetas.size))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda z: grid(z, xs), chunks))
    return np.vstack(parts)


def run_scan(cfg: ScanConfig, workers: int = 1) -> list[ProbabilityRecord]:
    return [ProbabilityRecord(*map(float, row)) for row in scan_array(cfg, workers)]


def format_csv(records) -> str:
    lines = [CSV_HEADER]
    lines.extend(",".join(format_number(v) for v in rec) for rec in records)
    return "\n".join(lines) + "\n"


def write_csv(records, destination) -> int:
    """Write records as CSV (LF line ends, UTF-8); returns the number of bytes written."""
    records = list(records)
    if not records:
        raise ValueError("no records to write")
    data = format_csv(records).encode("utf-8")
    path = Path(destination)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise ScanIOError(f"cannot write scan CSV to {path}: {exc.strerror or exc}") from exc
    return len(data)


def read_csv(source) -> list[ProbabilityRecord]:
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScanIOError(f"cannot read scan CSV from {path}: {exc.strerror or exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path} does not start with the scan CSV header")
    return [ProbabilityRecord(*map(float, line.split(","))) for line in lines[1:]]
