"""High-precision verification of Markov-Apery type zeta identities via a
generalized series-acceleration transform."""

from .precision import BigReal, DEFAULT_CTX, PrecisionContext
from .errors import (AccuracyError, ConditioningError, DomainError,
                     InternalConsistencyError, KoecherError,
                     UnsupportedCaseError)

__version__ = "0.1.0"

__all__ = [
    "BigReal",
    "PrecisionContext",
    "DEFAULT_CTX",
    "KoecherError",
    "DomainError",
    "AccuracyError",
    "ConditioningError",
    "InternalConsistencyError",
    "UnsupportedCaseError",
    "__version__",
]
