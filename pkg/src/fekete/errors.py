"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at a pole of the function."""


class DegenerateZeroError(ArithmeticError):
    """A zero is (numerically) not simple, so the log model does not apply.

    ``index`` identifies the offending arc or pattern when known.
    """

    def __init__(self, message, index=None, location=None):
        super().__init__(message)
        self.index = index
        self.location = location


class UnsupportedMomentError(DomainError):
    """Moment of total degree beyond what the exact evaluator handles."""


class CacheFormatError(ValueError):
    """A Legendre table cache file is malformed."""


class EvaluationError(ArithmeticError):
    """A function returned a non-finite value where a finite one was required."""
