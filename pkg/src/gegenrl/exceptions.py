"""Exception hierarchy shared by every module of the package."""


class GegenRLError(Exception):
    """Base class for all package errors."""


class DomainError(GegenRLError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(GegenRLError, ArithmeticError):
    """An iterative or series computation failed to converge.

    The best available estimate (if any) is kept on ``estimate`` and the
    amount of work done on ``iterations``.
    """

    def __init__(self, message, estimate=None, iterations=None):
        super().__init__(message)
        self.estimate = estimate
        self.iterations = iterations


class GridMismatchError(GegenRLError, ValueError):
    """Samples were taken on a grid other than the one a matrix was built for."""


class FormatError(GegenRLError):
    """A serialized FSGIM file is malformed or has an unsupported schema."""


class ChecksumError(FormatError):
    """A serialized FSGIM file failed its integrity check."""
