"""Test seeded samplers and finite-support laws."""

import math
from fractions import Fraction

import numpy as np
import pytest

from nbspectra.shared.ensembles import (
    EnsembleKind,
    EnsembleSpec,
    SeedSpec,
    entry_laws,
    enumerate_realizations,
    sample_custom_profile,
    sample_directed_er,
    sample_inhomogeneous_er,
    sample_matrix,
    sample_pair,
    sample_rademacher,
    trial_rng,
)
from nbspectra.shared.errors import SizeGuardError, ValidationError
from nbspectra.shared.models import norm_1_to_inf, norm_2_to_inf


def test_seed_spec_streams_are_reproducible():
    """Test that one (master, trial) pair always gives the same stream."""
    a = trial_rng(SeedSpec(42, 3)).random(5)
    b = trial_rng(SeedSpec(42, 3)).random(5)
    c = trial_rng(SeedSpec(42, 4)).random(5)

    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_seed_spec_validation():
    """Test master seed and trial index ranges."""
    with pytest.raises(ValidationError):
        SeedSpec(-1, 0)
    with pytest.raises(ValidationError):
        SeedSpec(2**64, 0)
    with pytest.raises(ValidationError):
        SeedSpec(1, -1)
    assert SeedSpec(7).child(2) == SeedSpec(7, 2)


def test_hermitian_er_is_deterministic():
    """Test identical adjacency for identical seeds."""
    spec = EnsembleSpec.erdos_renyi(80, 5.0)
    first = sample_inhomogeneous_er(spec, SeedSpec(11, 0))
    second = sample_inhomogeneous_er(spec, SeedSpec(11, 0))
    other = sample_inhomogeneous_er(spec, SeedSpec(11, 1))

    assert (first.A.csr != second.A.csr).nnz == 0
    assert (first.A.csr != other.A.csr).nnz > 0


def test_hermitian_er_structure():
    """Test symmetry, zero diagonal and centering of H."""
    spec = EnsembleSpec.erdos_renyi(60, 6.0)
    sample = sample_inhomogeneous_er(spec, SeedSpec(3, 0))
    A, H = sample

    dense_A = A.to_dense().real
    assert np.array_equal(dense_A, dense_A.T)
    assert np.all(np.diag(dense_A) == 0)
    assert H.hermitian
    expected = (dense_A - spec.profile.to_dense()) / math.sqrt(spec.params.d)
    assert np.allclose(H.to_dense(), expected)


def test_er_entry_mean_and_variance():
    """Test the mean and variance of the entries of H within five standard errors.

    With d = (n - 1) p each H_ij = (A_ij - p) / sqrt(d) has mean 0, variance
    p(1-p)/d and fourth moment p(1-p)(1 - 3p + 3p^2)/d^2.
    """
    n = 200
    spec = EnsembleSpec.erdos_renyi(n, 8.0)
    p = 8.0 / n
    d = spec.params.d
    upper = np.triu_indices(n, 1)
    values = np.concatenate(
        [
            sample_inhomogeneous_er(spec, SeedSpec(2024, trial)).H.to_dense().real[upper]
            for trial in range(10)
        ]
    )
    count = values.size
    variance = p * (1 - p) / d
    fourth = p * (1 - p) * (1 - 3 * p + 3 * p * p) / d**2

    assert abs(values.mean()) <= 5 * math.sqrt(variance / count)
    second = float(np.mean(values**2))
    assert abs(second - variance) <= 5 * math.sqrt((fourth - variance**2) / count)


def test_centered_entries_are_bounded_by_inverse_sqrt_d():
    """Test max |H_ij| <= 1/sqrt(d) for homogeneous and block ensembles."""
    specs = [
        EnsembleSpec.erdos_renyi(300, 5.0),
        EnsembleSpec.sbm([100, 100], [[0.1, 0.01], [0.01, 0.1]]),
    ]
    for spec in specs:
        bound = 1 / math.sqrt(spec.params.d)
        for trial in range(5):
            sample = sample_inhomogeneous_er(spec, SeedSpec(8, trial))
            assert norm_1_to_inf(sample.H) <= bound + 1e-12
            assert sample.centered_max_abs() <= bound + 1e-12


def test_centered_helpers_match_materialized_h():
    """Test matrix-free norms and products against the dense H."""
    spec = EnsembleSpec.sbm([20, 25], [[0.3, 0.05], [0.05, 0.2]])
    sample = sample_inhomogeneous_er(spec, SeedSpec(5, 2))
    H = sample.H

    assert math.sqrt(sample.centered_row_sq_sums().max()) == pytest.approx(
        norm_2_to_inf(H)
    )
    assert sample.centered_max_abs() == pytest.approx(norm_1_to_inf(H))
    x = trial_rng(SeedSpec(9)).standard_normal(spec.n)
    assert np.allclose(sample.centered_operator().matvec(x), H.to_dense() @ x)


def test_dense_limit_guards_h():
    """Test that H is not materialized above the dense limit."""
    spec = EnsembleSpec.erdos_renyi(50, 4.0)
    sample = sample_inhomogeneous_er(spec, SeedSpec(1), dense_limit=10)
    with pytest.raises(SizeGuardError):
        sample.H
    assert sample.centered_row_sq_sums().shape == (50,)


def test_directed_er_is_not_symmetric():
    """Test independent ordered pairs for the directed sampler."""
    spec = EnsembleSpec.erdos_renyi(60, 10.0, directed=True)
    assert spec.kind is EnsembleKind.DIRECTED_ER
    sample = sample_directed_er(spec, SeedSpec(4))

    dense = sample.A.to_dense().real
    assert np.all(np.diag(dense) == 0)
    assert not np.array_equal(dense, dense.T)
    assert not sample.H.hermitian


def test_samplers_reject_wrong_kind():
    """Test kind checks between specs and samplers."""
    hermitian = EnsembleSpec.erdos_renyi(10, 2.0)
    directed = EnsembleSpec.erdos_renyi(10, 2.0, directed=True)
    with pytest.raises(ValidationError):
        sample_directed_er(hermitian, 0)
    with pytest.raises(ValidationError):
        sample_inhomogeneous_er(directed, 0)
    with pytest.raises(ValidationError):
        sample_custom_profile(hermitian, 0)


def test_erdos_renyi_needs_two_vertices():
    """Test the minimum dimension."""
    with pytest.raises(ValidationError):
        EnsembleSpec.erdos_renyi(1, 1.0)


def test_rademacher_entries():
    """Test that every supported entry is +-1/q and nothing else is stored."""
    support = [(0, 1), (1, 2), (0, 2)]
    H = sample_rademacher(3, math.sqrt(2), support, SeedSpec(8))

    assert H.hermitian
    assert sorted(H.support()) == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    assert np.allclose(np.abs(H.csr.data), 1 / math.sqrt(2))


def test_rademacher_spec_and_laws():
    """Test the exact q^2 and the entry law of a rademacher spec."""
    spec = EnsembleSpec.rademacher(3, math.sqrt(2), [(0, 1), (1, 2), (0, 2)])
    assert spec.q2 == Fraction(2)

    laws = entry_laws(spec)
    assert set(laws) == {(0, 1), (0, 2), (1, 2)}
    law = laws[(0, 1)]
    assert law.exact
    assert law.moment(1, 1) == Fraction(1, 2)
    assert law.moment(1, 0) == 0
    assert law.moment(2, 2) == Fraction(1, 4)


def test_enumerate_realizations_probabilities_sum_to_one():
    """Test exhaustive enumeration over a small support."""
    spec = EnsembleSpec.rademacher(3, 1.0, [(0, 1), (1, 2)])
    realizations = list(enumerate_realizations(spec))

    assert len(realizations) == 4
    assert sum(prob for _, prob in realizations) == Fraction(1)
    with pytest.raises(SizeGuardError):
        list(enumerate_realizations(spec, limit=3))


def test_custom_profile_three_point_law():
    """Test values, support and the S q^2 <= 1 requirement."""
    S = np.full((4, 4), 0.25)
    spec = EnsembleSpec.custom(S, 2.0)
    H = sample_custom_profile(spec, SeedSpec(12))

    assert H.hermitian
    assert np.allclose(np.abs(H.csr.data), 0.5)
    law = entry_laws(spec)[(0, 1)]
    assert law.exact
    assert law.moment(1, 1) == Fraction(1, 4)
    with pytest.raises(ValidationError):
        EnsembleSpec.custom(S, 3.0)


def test_sample_matrix_and_pair_dispatch():
    """Test that the generic entry points follow the ensemble kind."""
    er = EnsembleSpec.erdos_renyi(30, 4.0)
    A, H = sample_pair(er, SeedSpec(2))
    assert A is not None
    assert np.allclose(sample_matrix(er, SeedSpec(2)).to_dense(), H.to_dense())

    rad = EnsembleSpec.rademacher(4, 1.0, [(0, 1), (2, 3)])
    A, H = sample_pair(rad, SeedSpec(2))
    assert A is None
    assert H.nnz == 4


def test_describe_reports_parameters():
    """Test the JSON-safe summary of a spec."""
    info = EnsembleSpec.erdos_renyi(100, 10.0).describe()
    assert info["kind"] == "hermitian-er"
    assert info["n"] == 100
    assert info["d"] == pytest.approx(99 * 0.1)
