"""Exception types raised across the package."""


class GybeError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(GybeError, ValueError):
    pass


class DimensionCapExceeded(GybeError, MemoryError):
    """An operation would materialize a matrix larger than the configured cap."""


class SingularDenominator(GybeError, ZeroDivisionError):
    pass


class DomainError(GybeError, ValueError):
    """A formula was evaluated at a point excluded from its domain."""


class WindowViolation(GybeError, ValueError):
    """(z, N) lies outside N/2 <= z <= N-1."""


class NotDiagonalSupport(GybeError, ValueError):
    pass


class UnsupportedParity(GybeError, ValueError):
    pass
