"""Exception types shared across the package."""


class KoecherError(Exception):
    """Base class for all package-specific errors."""


class DomainError(KoecherError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class UnsupportedCaseError(KoecherError, ValueError):
    """A documented restriction (e.g. Custom sequences have no zeta, n=2 of
    the Euler-sum identity is excluded)."""


class ConditioningError(KoecherError, ArithmeticError):
    """A computation would divide by a quantity indistinguishable from zero
    at the working precision."""


class AccuracyError(KoecherError, ArithmeticError):
    """The requested tolerance could not be certified.

    ``best`` carries the best available estimate (or None), so callers can
    still report a value together with the failure.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class InternalConsistencyError(KoecherError, RuntimeError):
    """An internal cross-check failed (e.g. a polynomial interpolation
    produced a non-integer coefficient)."""
