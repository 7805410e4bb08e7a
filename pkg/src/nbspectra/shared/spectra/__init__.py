"""Eigenvalue machinery for B and H, and trace moments."""
from .config import SpectralConfig
from .moments import TraceMode, TraceMoment, gelfand_bound, trace_moment
from .solvers import (
    HermitianExtremes,
    RadiusResult,
    SpectralReport,
    centered_extremes,
    dense_spectrum,
    hermitian_extremes,
    max_real_eigenvalue,
    operator_norm,
    second_adjacency_eigenvalue,
    spectral_radius,
    spectral_report,
)

__all__ = [
    "SpectralConfig",
    "TraceMode",
    "TraceMoment",
    "gelfand_bound",
    "trace_moment",
    "HermitianExtremes",
    "RadiusResult",
    "SpectralReport",
    "centered_extremes",
    "dense_spectrum",
    "hermitian_extremes",
    "max_real_eigenvalue",
    "operator_norm",
    "second_adjacency_eigenvalue",
    "spectral_radius",
    "spectral_report",
]
