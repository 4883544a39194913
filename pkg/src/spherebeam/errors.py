"""Exception types raised across the package.

Everything inherits from SpherebeamError so callers can catch one base
class at the CLI boundary and map it to an exit code.
"""

from __future__ import annotations


class SpherebeamError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCount(SpherebeamError):
    """Element count is zero, negative, or otherwise unusable."""


class InvalidRadius(SpherebeamError):
    """Sphere or ring radius is non-positive or non-finite."""


class NotSquare(SpherebeamError):
    """Planar array size is not a perfect square."""


class InvalidSpacing(SpherebeamError):
    """Lattice spacing is non-positive."""


class InvalidRotation(SpherebeamError):
    """Matrix is not a proper rotation (orthonormal, determinant +1)."""


class DegenerateGeometry(SpherebeamError):
    """A target point coincides with an element position."""


class TargetInsideArray(SpherebeamError):
    """Focal or sweep point lies inside or on the array sphere."""


class InvalidWavelength(SpherebeamError):
    """Carrier wavelength is non-positive."""


class NoVisibleElements(SpherebeamError):
    """No element has line of sight to the target; the channel is all zero."""


class DimensionMismatch(SpherebeamError):
    """Weight and channel vectors have different lengths."""


class DegeneratePattern(SpherebeamError):
    """Pattern values are all zero or flat, so normalization or metrics
    extraction has no well-defined reference."""


class AllBeamsInfeasible(SpherebeamError):
    """Every requested focal point was skipped during an overlay."""


class ParseError(SpherebeamError):
    """Scenario text could not be parsed.

    Carries the 1-based line number where parsing failed.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SpherebeamError):
    """Scenario parsed but a field value violates its contract."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message)
