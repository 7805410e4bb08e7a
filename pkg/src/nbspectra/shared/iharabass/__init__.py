"""Determinant identity, eigenvector recovery and deterministic norm bounds."""
from .bounds import BoundReport, f_profile, lambda0, norm_bound, psd_gap, psd_hypotheses
from .formula import (
    GUARD_EPS,
    SKIP_BAND,
    LambdaMatrices,
    Recovery,
    balanced_logdet,
    guard_value,
    ib_determinant,
    lambda_matrices,
    null_vector,
    recover_b_eigvec,
)
from .roots import (
    EquivalenceReport,
    det_ratio,
    ib_equivalence,
    match_spectra,
    pole_pad,
    real_roots,
    regular_b_spectrum,
    search_radius,
)

__all__ = [
    "BoundReport",
    "f_profile",
    "lambda0",
    "norm_bound",
    "psd_gap",
    "psd_hypotheses",
    "GUARD_EPS",
    "SKIP_BAND",
    "LambdaMatrices",
    "Recovery",
    "balanced_logdet",
    "guard_value",
    "ib_determinant",
    "lambda_matrices",
    "null_vector",
    "recover_b_eigvec",
    "EquivalenceReport",
    "det_ratio",
    "ib_equivalence",
    "match_spectra",
    "pole_pad",
    "real_roots",
    "regular_b_spectrum",
    "search_radius",
]
