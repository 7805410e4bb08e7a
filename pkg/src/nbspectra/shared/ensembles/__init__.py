"""Seeded samplers and finite-support laws for the random-matrix families."""
from .laws import (
    EntryLaw,
    enumerate_realizations,
    entry_laws,
    realization_count,
    realization_matrix,
    sample_from_laws,
)
from .samplers import (
    ErSample,
    sample_custom_profile,
    sample_directed_er,
    sample_inhomogeneous_er,
    sample_matrix,
    sample_pair,
    sample_rademacher,
)
from .seeds import SeedSpec, as_seed, trial_rng
from .spec import EnsembleKind, EnsembleSpec, normalize_support

__all__ = [
    "EnsembleKind",
    "EnsembleSpec",
    "EntryLaw",
    "ErSample",
    "SeedSpec",
    "as_seed",
    "enumerate_realizations",
    "entry_laws",
    "normalize_support",
    "realization_count",
    "realization_matrix",
    "sample_custom_profile",
    "sample_directed_er",
    "sample_from_laws",
    "sample_inhomogeneous_er",
    "sample_matrix",
    "sample_pair",
    "sample_rademacher",
    "trial_rng",
]
