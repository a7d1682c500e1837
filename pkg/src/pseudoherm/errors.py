"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Matrix or vector shapes are incompatible."""


class RegimeError(ValueError):
    """Operation is undefined in the spectral regime of the given parameters."""


class TachyonicModeError(RegimeError):
    """A squared mass eigenvalue is negative, so the frequency is imaginary."""


class SingularMetricError(ValueError):
    """Metric operator is not invertible."""


class ConfigError(ValueError):
    """Invalid scan or command configuration."""


class ScanIOError(OSError):
    """Failure while writing or reading scan output."""
