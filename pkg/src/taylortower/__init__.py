"""Exact power-series models of functors defined by functional equations."""

from .models import FunctorKind, closed_form, equation_residual, solve_reduced
from .series import DomainError, ExactRational, Monomial, Series, SeriesError, UsageError

__all__ = [
    "DomainError",
    "ExactRational",
    "FunctorKind",
    "Monomial",
    "Series",
    "SeriesError",
    "UsageError",
    "closed_form",
    "equation_residual",
    "solve_reduced",
]
__version__ = "0.1.0"
