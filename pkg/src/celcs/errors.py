"""Exception types shared across the package."""


class CelcsError(Exception):
    """Base class for errors raised by this package."""


class SequenceFormatError(CelcsError, ValueError):
    """Raised when a sequence, cube or mask text cannot be parsed."""


class CapacityError(CelcsError):
    """Raised when a brute-force or exhaustive run exceeds its configured budget."""
