"""Exception hierarchy shared across the package.

Every message is prefixed "module.operation: detail" so a failure names the
code path that raised it.  CLI command handlers catch ZetasumError, print the
message to stderr, and exit nonzero; anything else is a genuine bug and is
allowed to traceback.
"""

from __future__ import annotations


class ZetasumError(Exception):
    """Base class for all expected failures."""


class DomainError(ZetasumError):
    """Argument outside an operation's mathematical domain."""


class ParseError(ZetasumError):
    """Weight-expression text rejected; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class AdmissibilityError(ZetasumError):
    """Weight function violates a sign/monotonicity/convexity requirement."""


class FileFormatError(ZetasumError):
    """Zero-table file is malformed."""


class CompletenessError(ZetasumError):
    """Zero count disagrees with the counting formula."""


class ConvergenceError(ZetasumError):
    """Requested tolerance not reached within the subdivision budget."""


class DivergenceError(ZetasumError):
    """An integral or sum that must converge does not."""


class AmbiguousQueryError(ZetasumError):
    """Query point overlaps a zero enclosure, so N(T) has no certain value."""
