"""Fekete polynomials on the unit circle and their limiting random process."""
from .arith import LegendreTable, gauss_sum, is_prime, legendre_table, quadratic_correlation
from .errors import (
    DegenerateZeroError,
    DomainError,
    EvaluationError,
    PoleError,
    UnsupportedMomentError,
)
from .estimate import Estimate
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "LegendreTable",
    "legendre_table",
    "gauss_sum",
    "is_prime",
    "quadratic_correlation",
    "Estimate",
    "DomainError",
    "PoleError",
    "DegenerateZeroError",
    "EvaluationError",
    "UnsupportedMomentError",
    "BACKEND",
    "__version__",
]
