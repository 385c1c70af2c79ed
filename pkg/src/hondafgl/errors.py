"""Exception hierarchy shared by all hondafgl modules."""


class FglError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(FglError):
    """Operands do not fit together: mismatched variable sets, mismatched
    coefficient domains, a substitution that misses a variable, an index out
    of range, or an inconsistent tower."""


class ParameterError(FglError):
    """A user-supplied parameter is invalid (non-prime p, s = 1 where the
    recursion needs s > 1, non-positive level, ...)."""


class IntegralityError(FglError):
    """A rational coefficient has a denominator divisible by p, so it has no
    image in the prime field.  For the oracle pipeline this signals a genuine
    p-integrality failure and is treated as fatal."""


class InternalConsistencyError(FglError):
    """An identity the implementation relies on failed at runtime: an inexact
    division while solving for a Witt polynomial, or a ladder divisibility
    certificate that does not hold.  Must never fire on correct code."""


class GradingError(FglError):
    """A nonzero term violates the homogeneity forced by the grading of the
    coefficient ring."""


class VacuityError(FglError):
    """A certificate was requested at a truncation level too shallow to say
    anything; the caller should extend the tower first."""


class ResourceLimitError(FglError):
    """A configurable size guard tripped before a computation that would
    exceed desk scale.  `projected` carries the projected cost."""

    def __init__(self, message: str, projected: int | None = None):
        super().__init__(message)
        self.projected = projected
