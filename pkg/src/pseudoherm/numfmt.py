"""Locale-free shortest round-trip number formatting for CSV and CLI output."""
import math


def format_number(value) -> str:
    """Shortest decimal that parses back to the same double; integral values drop '.0'."""
    v = float(value)
    if v.is_integer() and abs(v) < 1e16:
        if v == 0 and math.copysign(1.0, v) < 0:
            return "-0"
        return str(int(v))
    return repr(v)


def format_complex(value) -> str:
    """``a`` for real values, otherwise ``a+bi`` / ``a-bi``."""
    z = complex(value)
    if z.imag == 0:
        return format_number(z.real)
    sign = "+" if z.imag > 0 else "-"
    return f"{format_number(z.real)}{sign}{format_number(abs(z.imag))}i"
