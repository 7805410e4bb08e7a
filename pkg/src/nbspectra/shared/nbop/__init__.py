"""Nonbacktracking operator: edge index, matrix-free apply and materializations."""
from .operator import (
    DENSE_MAX_EDGES,
    FULL_MODE_MAX_N,
    EdgeIndex,
    NbMode,
    NbOperator,
    build_nb_operator,
    full_rows_sq_norm,
    nb_apply,
    nb_dense,
    nb_sparse,
)

__all__ = [
    "DENSE_MAX_EDGES",
    "FULL_MODE_MAX_N",
    "EdgeIndex",
    "NbMode",
    "NbOperator",
    "build_nb_operator",
    "full_rows_sq_norm",
    "nb_apply",
    "nb_dense",
    "nb_sparse",
]
