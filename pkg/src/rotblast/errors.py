"""Exception types raised by the solver modules."""


class RotBlastError(Exception):
    """Base class for all package errors."""


class DomainError(RotBlastError, ValueError):
    """An input lies outside the physical or mathematical domain of an operation."""


class SingularityError(RotBlastError, ArithmeticError):
    """A division or linear solve hit a (near-)singular point.

    ``x`` records the similarity coordinate where it happened, if known.
    """

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class ConvergenceError(RotBlastError, RuntimeError):
    """Quadrature, integration or root finding did not converge."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class BreakdownError(RotBlastError, ArithmeticError):
    """The similarity solution is non-physical for the given parameters."""
