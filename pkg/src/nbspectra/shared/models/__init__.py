"""Core matrix types, norms and parameter derivations."""
from .library import (
    adjacency_eigenvalues,
    adjacency_matrix,
    available_graphs,
    graph_by_name,
    load_matrix,
    named_matrix,
    regular_degree,
    save_matrix,
    support_edges,
)
from .matrix import SparseMatrix
from .params import (
    AssumptionReport,
    EnsembleParams,
    NormReport,
    capped_q,
    derive_er_parameters,
    norm_1_to_inf,
    norm_2_to_inf,
    norm_report,
    validate_assumptions,
    variance_parameters,
)
from .profile import ProbabilityProfile, build_sbm_profile, check_probabilities

__all__ = [
    "SparseMatrix",
    "ProbabilityProfile",
    "build_sbm_profile",
    "check_probabilities",
    "EnsembleParams",
    "NormReport",
    "AssumptionReport",
    "capped_q",
    "derive_er_parameters",
    "variance_parameters",
    "norm_1_to_inf",
    "norm_2_to_inf",
    "norm_report",
    "validate_assumptions",
    "adjacency_eigenvalues",
    "adjacency_matrix",
    "available_graphs",
    "graph_by_name",
    "load_matrix",
    "named_matrix",
    "regular_degree",
    "save_matrix",
    "support_edges",
]
