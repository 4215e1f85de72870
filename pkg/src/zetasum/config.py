"""Global working-precision configuration.

All certified midpoint arithmetic runs on MPFR floats at a single global
precision, read once at import time from ZETASUM_PRECISION_BITS (default 128
bits of mantissa).  Changing precision mid-computation is not supported:
derived caches (rule nodes, logarithm tables, named constants) are keyed by
precision, so a change mid-run would silently mix enclosures computed under
different roundings.  Set it once, at startup, before touching anything else.
"""

from __future__ import annotations

import os

import gmpy2

ENV_VAR = "ZETASUM_PRECISION_BITS"
DEFAULT_PRECISION_BITS = 128
_MIN_BITS = 32


def set_precision_bits(bits: int) -> None:
    """Set the global mantissa precision for all subsequent ball operations."""
    if bits < _MIN_BITS:
        raise ValueError(
            f"config.set_precision_bits: need at least {_MIN_BITS} bits, got {bits}"
        )
    gmpy2.get_context().precision = int(bits)


def precision_bits() -> int:
    """Current global mantissa precision in bits."""
    return gmpy2.get_context().precision


def configure_from_env() -> None:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        set_precision_bits(DEFAULT_PRECISION_BITS)
        return
    try:
        bits = int(raw)
    except ValueError as exc:
        raise ValueError(f"config: {ENV_VAR} must be an integer, got {raw!r}") from exc
    set_precision_bits(bits)


configure_from_env()
