"""Test the nonbacktracking operator against its entrywise definition."""

import numpy as np
import pytest

from nbspectra.shared.errors import SizeGuardError, ValidationError
from nbspectra.shared.models import SparseMatrix, named_matrix
from nbspectra.shared.nbop import (
    NbMode,
    build_nb_operator,
    full_rows_sq_norm,
    nb_apply,
    nb_dense,
    nb_sparse,
)


def _random_matrix(n, density, seed, hermitian=True):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    M[rng.random((n, n)) > density] = 0
    np.fill_diagonal(M, 0)
    if hermitian:
        M = np.triu(M, 1)
        M = M + M.conj().T
    return SparseMatrix.from_dense(M, hermitian=hermitian or None)


def _definition(H, pairs):
    """B_{(i,j),(k,l)} = H_kl [j == k] [i != l] over the given index pairs."""
    dense = H.to_dense()
    size = len(pairs)
    B = np.zeros((size, size), dtype=complex)
    for r, (i, j) in enumerate(pairs):
        for c, (k, l) in enumerate(pairs):
            if j == k and i != l:
                B[r, c] = dense[k, l]
    return B


@pytest.mark.parametrize("hermitian", [True, False])
def test_support_mode_matches_definition(hermitian):
    """Test dense B in the support-restricted mode."""
    H = _random_matrix(7, 0.5, seed=1, hermitian=hermitian)
    op = build_nb_operator(H)

    assert op.mode is NbMode.SUPPORT
    assert op.dim == H.nnz
    assert np.allclose(nb_dense(op), _definition(H, H.support()))


def test_full_mode_matches_definition():
    """Test dense B over all n^2 directed pairs."""
    H = _random_matrix(5, 0.6, seed=2)
    op = build_nb_operator(H, NbMode.FULL)
    pairs = [(i, j) for i in range(5) for j in range(5)]

    assert op.dim == 25
    assert np.allclose(nb_dense(op), _definition(H, pairs))


def test_matrix_free_apply_matches_materialized():
    """Test nb_apply on vectors and blocks in both modes."""
    H = _random_matrix(8, 0.4, seed=3)
    rng = np.random.default_rng(4)
    for mode in (NbMode.SUPPORT, NbMode.FULL):
        op = build_nb_operator(H, mode)
        B = nb_sparse(op).toarray()
        x = rng.standard_normal(op.dim)
        X = rng.standard_normal((op.dim, 3))
        assert np.allclose(nb_apply(op, x), B @ x)
        assert np.allclose(nb_apply(op, X), B @ X)
        assert np.allclose(op.as_linear_operator().matvec(x), B @ x)


def test_full_rows_sq_norm_matches_full_apply():
    """Test the closed-form squared length of B x over all n^2 rows."""
    H = _random_matrix(6, 0.5, seed=5)
    support = build_nb_operator(H)
    full = build_nb_operator(H, NbMode.FULL)
    x = np.random.default_rng(6).standard_normal(support.m)
    embedded = np.zeros(full.dim, dtype=complex)
    embedded[support.index.keys] = x

    expected = np.sum(np.abs(nb_apply(full, embedded)) ** 2)
    assert full_rows_sq_norm(support, x) == pytest.approx(expected)


def test_edge_index_reverse_pairs():
    """Test reverse positions for a symmetric and a one-way support."""
    op = build_nb_operator(named_matrix("triangle"))
    idx = op.index
    for e, (i, j) in enumerate(idx.edges):
        assert idx.edges[idx.reverse[e]] == (j, i)
    assert idx.lookup(2, 0) == 4
    with pytest.raises(KeyError):
        idx.lookup(0, 0)

    one_way = SparseMatrix.from_entries(3, [(0, 1, 1.0)])
    assert build_nb_operator(one_way).index.reverse.tolist() == [-1]


def test_cycle_operator_is_a_permutation():
    """Test that B of a cycle sends each pair to exactly one successor."""
    B = nb_dense(build_nb_operator(named_matrix("cycle6")))

    assert B.shape == (12, 12)
    assert np.allclose(B.sum(axis=0), 1)
    assert np.allclose(B.sum(axis=1), 1)


def test_length_mismatch_is_rejected():
    """Test vector validation."""
    op = build_nb_operator(named_matrix("k4"))
    with pytest.raises(ValidationError):
        nb_apply(op, np.ones(op.dim + 1))
    with pytest.raises(ValidationError):
        full_rows_sq_norm(op, np.ones(op.dim - 1))


def test_size_guards():
    """Test the full-mode and dense-materialization guards."""
    with pytest.raises(SizeGuardError):
        build_nb_operator(SparseMatrix.zeros(65), NbMode.FULL)
    op = build_nb_operator(named_matrix("k5"))
    with pytest.raises(SizeGuardError):
        nb_dense(op, limit=10)


def test_empty_matrix_has_empty_operator():
    """Test that a zero matrix gives a zero-dimensional operator."""
    op = build_nb_operator(SparseMatrix.zeros(4))
    assert op.m == 0
    assert nb_apply(op, np.zeros(0)).shape == (0,)
