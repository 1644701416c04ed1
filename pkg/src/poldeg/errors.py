"""Exception types shared across the package."""


class PoldegError(Exception):
    """Base class for the domain errors raised by this package."""


class DimMismatch(PoldegError):
    """Operands have incompatible dimensions."""


class UnsupportedDim(PoldegError):
    """Requested dimension is not 2 or 3."""


class NotHermitian(PoldegError):
    """Matrix deviates from Hermiticity beyond tolerance."""


class NonPositiveTrace(PoldegError):
    """Matrix trace is not positive, so it cannot be normalized."""


class NotPositiveSemidefinite(PoldegError):
    """Matrix has an eigenvalue below the negativity tolerance."""


class OutsideTriangle(PoldegError):
    """(n3, n8) point lies outside the positivity region."""


class BadResolution(PoldegError):
    """Grid resolution must be at least 2."""


class InternalConsistencyError(PoldegError):
    """A computed quantity violates a guaranteed bound by more than round-off."""
