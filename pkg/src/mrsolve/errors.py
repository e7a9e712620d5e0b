"""Exception hierarchy for mrsolve."""

from __future__ import annotations


class MRSolveError(Exception):
    """Base class for all package errors."""


class DomainError(MRSolveError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NoInteriorMinimum(DomainError):
    """The potential has no extremum at positive ``r`` for these parameters."""


class NoBoundState(DomainError):
    """The coupling ``A`` does not exceed the critical coupling of the level.

    Attributes
    ----------
    critical : float
        The critical coupling ``A_c`` for the requested level.
    """

    def __init__(self, message: str, critical: float):
        super().__init__(message)
        self.critical = critical


class ConvergenceError(MRSolveError, RuntimeError):
    """An iterative procedure failed.

    ``bracket`` holds the last energy bracket (or ``None``) and ``estimate``
    the best value reached, for diagnostics.
    """

    def __init__(self, message: str, bracket=None, estimate=None):
        super().__init__(message)
        self.bracket = bracket
        self.estimate = estimate


class NormalizationError(MRSolveError, ArithmeticError):
    """The closed-form norm integral came out non-positive."""
