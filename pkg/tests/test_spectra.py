"""Test spectral radius, Hermitian extremes and trace moments."""

import math

import numpy as np
import pytest

from nbspectra.shared.ensembles import (
    EnsembleSpec,
    SeedSpec,
    sample_inhomogeneous_er,
    sample_rademacher,
)
from nbspectra.shared.errors import SizeGuardError, ValidationError
from nbspectra.shared.models import SparseMatrix, named_matrix
from nbspectra.shared.nbop import NbMode, build_nb_operator, nb_dense
from nbspectra.shared.spectra import (
    SpectralConfig,
    TraceMode,
    centered_extremes,
    dense_spectrum,
    gelfand_bound,
    hermitian_extremes,
    max_real_eigenvalue,
    operator_norm,
    second_adjacency_eigenvalue,
    spectral_radius,
    spectral_report,
    trace_moment,
)


@pytest.mark.parametrize(
    "name, rho",
    [
        ("edge", 0.0),
        ("triangle", 1.0),
        ("cycle6", 1.0),
        ("k4", 2.0),
        ("k5", 3.0),
        ("petersen", 2.0),
    ],
)
def test_spectral_radius_of_named_graphs(name, rho):
    """Test rho(B) = d - 1 on regular graphs and 0 on a single edge."""
    result = spectral_radius(build_nb_operator(named_matrix(name)))

    assert result.rho == pytest.approx(rho, abs=1e-6)
    assert result.converged


def test_spectral_radius_of_empty_operator():
    """Test the empty-support shortcut."""
    result = spectral_radius(build_nb_operator(SparseMatrix.zeros(3)))
    assert result.rho == 0.0
    assert result.method == "empty"


def test_spectral_radius_full_mode_uses_support():
    """Test that the full-mode operator has the same radius."""
    H = named_matrix("k4")
    support = spectral_radius(build_nb_operator(H))
    full = spectral_radius(build_nb_operator(H, NbMode.FULL))
    assert full.rho == pytest.approx(support.rho, abs=1e-6)


def test_spectral_radius_cross_check_on_random_graph():
    """Test the iterative estimate against the dense spectrum."""
    spec = EnsembleSpec.erdos_renyi(100, 5.0)
    A = sample_inhomogeneous_er(spec, SeedSpec(21)).A
    result = spectral_radius(build_nb_operator(A), SpectralConfig(seed=SeedSpec(1)))

    assert result.dense_rho is not None
    assert result.rho == pytest.approx(result.dense_rho, rel=1e-4)
    assert result.certificate


def test_dense_spectrum_validation():
    """Test shape checks and the empty case."""
    with pytest.raises(ValidationError):
        dense_spectrum(np.ones((2, 3)))
    assert dense_spectrum(np.zeros((0, 0))).shape == (0,)


def test_max_real_eigenvalue():
    """Test the largest real eigenvalue of B for K4."""
    op = build_nb_operator(named_matrix("k4"))
    assert max_real_eigenvalue(op) == pytest.approx(2.0)


def test_hermitian_extremes():
    """Test extremes of the triangle and the hermitian requirement."""
    ext = hermitian_extremes(named_matrix("triangle"))
    assert ext.lambda_max == pytest.approx(2.0)
    assert ext.lambda_min == pytest.approx(-1.0)
    assert ext.opnorm == pytest.approx(2.0)

    with pytest.raises(ValidationError):
        hermitian_extremes(SparseMatrix.from_entries(2, [(0, 1, 1.0)]))


def test_operator_norm_of_directed_matrix():
    """Test the singular-value route for a non-Hermitian matrix."""
    H = SparseMatrix.from_entries(3, [(0, 1, 3.0), (1, 2, 4.0)])
    assert operator_norm(H) == pytest.approx(4.0)


def test_second_adjacency_eigenvalue():
    """Test lambda_2 of K4 and the Petersen graph."""
    assert second_adjacency_eigenvalue(named_matrix("k4")) == pytest.approx(-1.0)
    assert second_adjacency_eigenvalue(named_matrix("petersen")) == pytest.approx(1.0)


def test_centered_extremes_match_materialized():
    """Test the matrix-free centered operator against the dense H."""
    spec = EnsembleSpec.erdos_renyi(80, 8.0)
    sample = sample_inhomogeneous_er(spec, SeedSpec(13))
    direct = hermitian_extremes(sample.H)
    via_sample = centered_extremes(sample)

    assert via_sample.opnorm == pytest.approx(direct.opnorm, rel=1e-8)


def test_spectral_report_fields():
    """Test the combined report for K4."""
    report = spectral_report(named_matrix("k4"))
    assert report.rho_B == pytest.approx(2.0, abs=1e-6)
    assert report.max_real_eig_B == pytest.approx(2.0)
    assert report.opnorm_H == pytest.approx(3.0)
    assert report.lambda_min_H == pytest.approx(-1.0)


def test_exact_trace_moment_values():
    """Test tr B B^* for the half-weight triangle and unit K4."""
    triangle = build_nb_operator(named_matrix("triangle", weight=1 / math.sqrt(2)))
    assert trace_moment(triangle, 1).value == pytest.approx(6.0)

    k4 = build_nb_operator(named_matrix("k4"))
    assert trace_moment(k4, 1).value == pytest.approx(36.0)


def test_exact_trace_moment_matches_dense_full_operator():
    """Test the support-restricted accumulation against dense full B."""
    H = named_matrix("path4", weight=0.7)
    B = nb_dense(build_nb_operator(H, NbMode.FULL))
    for ell in (1, 2, 3):
        Bl = np.linalg.matrix_power(B, ell)
        expected = float(np.trace(Bl @ Bl.conj().T).real)
        moment = trace_moment(build_nb_operator(H), ell)
        assert moment.value == pytest.approx(expected)
        assert moment.stderr == 0.0


def test_stochastic_trace_moment_is_close_to_exact():
    """Test the Hutchinson estimate within six standard errors."""
    op = build_nb_operator(named_matrix("petersen"))
    exact = trace_moment(op, 3).value
    cfg = SpectralConfig(seed=SeedSpec(3), sign_vectors=400)
    estimate = trace_moment(op, 3, TraceMode.STOCHASTIC, cfg)

    assert estimate.mode == "stochastic"
    assert abs(estimate.value - exact) <= 6 * estimate.stderr + 1e-9 * exact


def test_trace_moment_guards(monkeypatch):
    """Test the length check and the exact-mode size guard."""
    from nbspectra.shared.spectra import moments

    op = build_nb_operator(named_matrix("k4"))
    with pytest.raises(ValidationError):
        trace_moment(op, 0)
    with pytest.raises(ValueError):
        trace_moment(op, 1, "exact")

    monkeypatch.setattr(moments, "EXACT_MAX_EDGES", 10)
    with pytest.raises(SizeGuardError):
        trace_moment(build_nb_operator(named_matrix("k5")), 1)


def test_gelfand_bound_dominates_radius():
    """Test that every trace bound sits above rho(B) and tightens with l."""
    op = build_nb_operator(named_matrix("k4"))
    bounds = [gelfand_bound(trace_moment(op, ell), ell) for ell in (1, 5, 20, 40)]

    assert all(b >= 2.0 - 1e-9 for b in bounds)
    assert bounds[-1] < bounds[0]
    assert bounds[-1] < 1.25 * 2.0


@pytest.mark.slow
def test_gelfand_chain_on_random_instances():
    """Test (tr B^l B^{*l})^(1/(2l)) >= rho(B) for l = 1..6 on 100 instances."""
    rng = np.random.default_rng(606)
    checked = 0
    for trial in range(100):
        seed = SeedSpec(606, trial)
        if trial % 2:
            n = int(rng.integers(6, 21))
            spec = EnsembleSpec.erdos_renyi(n, float(rng.uniform(2.0, n / 2)))
            H = sample_inhomogeneous_er(spec, seed).H
        else:
            n = int(rng.integers(8, 41))
            support = [
                (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.15
            ]
            H = sample_rademacher(n, float(rng.uniform(1.0, 3.0)), support, seed)
        op = build_nb_operator(H)
        if op.m == 0 or op.m > 512:
            continue
        rho = float(np.max(np.abs(dense_spectrum(nb_dense(op)))))
        for ell in range(1, 7):
            assert gelfand_bound(trace_moment(op, ell), ell) >= rho - 1e-6, (trial, ell)
        checked += 1
    assert checked >= 90


def test_spectral_config_validation():
    """Test solver configuration ranges."""
    with pytest.raises(ValidationError):
        SpectralConfig(tol=0.0)
    with pytest.raises(ValidationError):
        SpectralConfig(sign_vectors=1)
    with pytest.raises(ValidationError):
        SpectralConfig(dense_check_limit=5000)
    assert SpectralConfig(tol=1e-3).iterative_tol == 1e-3
