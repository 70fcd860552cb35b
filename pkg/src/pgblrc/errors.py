"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "DegenerateCodeError",
    "GuardExceededError",
    "IncidenceFileError",
    "NotInformationSetError",
    "NotLocallyRepairableError",
    "PgValidationError",
]


class PgValidationError(ValueError):
    """A partial-geometry axiom failed.

    ``kind`` names the failed check (point-degree, line-size,
    line-intersection, alpha, cardinality) and ``witness`` points at the
    offending point/line indices when there is one.
    """

    def __init__(self, kind: str, message: str, witness=None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


class IncidenceFileError(ValueError):
    """Malformed incidence file; carries the 1-based source line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class DegenerateCodeError(ValueError):
    """The geometry cannot carry a code (no message symbols survive)."""


class NotInformationSetError(ValueError):
    """The chosen coordinates do not determine the message uniquely."""


class GuardExceededError(RuntimeError):
    """An exhaustive search would exceed its configured work guard."""


class NotLocallyRepairableError(RuntimeError):
    """No repair alternative survives the given unavailability pattern."""
