"""Custom exceptions for the vects1 library."""

from __future__ import annotations


class Vects1Error(Exception):
    """Base exception for all vects1 errors."""


class ResolutionError(Vects1Error):
    """Raised when a sample grid is too coarse to recover the requested coefficients."""


class DimensionMismatchError(Vects1Error):
    """Raised when operators or series of incompatible sizes or scalar modes are combined."""


class BandwidthError(Vects1Error):
    """Raised when a frequency falls outside the truncated window of an operator."""


class SingularSymbolError(Vects1Error, ZeroDivisionError):
    """Raised when a Fourier multiplier with a zero symbol value is inverted."""


class DegenerateFitError(Vects1Error):
    """Raised when polynomial interpolation cannot certify the degree of its data."""


class InstabilityError(Vects1Error):
    """Raised when a time integration produces non-finite coefficients."""


class OracleMismatchError(Vects1Error):
    """Raised when the closed-form pairings and the matrix oracle disagree."""


class InvalidConfigError(Vects1Error):
    """Raised when a run configuration fails validation."""


class VerificationFailure(Vects1Error):
    """Raised when a check runs to completion but its result is outside tolerance."""
