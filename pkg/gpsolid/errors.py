"""
Error types raised by gpsolid.

All of them derive from ValueError so callers that only guard against
ValueError keep working. Non-convergence is not an error: results carry a
``converged`` flag instead.
"""

from typing import List, Optional


class GPSolidError(ValueError):
    """Base class for every gpsolid error."""


class QuadratureError(GPSolidError):
    """Adaptive quadrature hit its node budget before reaching tolerance."""


class DivergentMomentError(GPSolidError):
    """A moment was requested that the declared decay exponent cannot make finite."""


class ScanIncompleteError(GPSolidError):
    """The minimum of a k-scan sits on the last grid point; k_max is too small."""


class InsufficientDataError(GPSolidError):
    """Too few samples for a fit or extrapolation."""


class DegreeUndefinedError(GPSolidError):
    """The field vanishes on the circle used to compute a winding degree."""


class EnergyBoundViolation(GPSolidError):
    """A free energy fell below the superstability floor -mu^2/(4 eps)|Omega+B_r|."""


class SnapshotFormatError(GPSolidError):
    """A field snapshot file could not be decoded."""


class ConfigError(GPSolidError):
    """Run configuration could not be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None, errors: Optional[List[str]] = None):
        self.line = line
        self.errors = errors or [message]
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
