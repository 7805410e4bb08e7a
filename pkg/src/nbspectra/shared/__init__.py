"""Shared components for nbspectra"""
from .errors import (
    ConfigError,
    ConvergenceError,
    GuardError,
    NbSpectraError,
    NotFoundError,
    SizeGuardError,
    ValidationError,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "GuardError",
    "NbSpectraError",
    "NotFoundError",
    "SizeGuardError",
    "ValidationError",
]
