"""
Eigenvalue machinery for B and H.

The spectral radius of the non-normal B is estimated by power iteration with
complex random starts and a two-dimensional Ritz extraction, refined with
ARPACK and cross-checked against the dense solver at validation scale.
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence, eigs, eigsh, svds

from ..ensembles import ErSample
from ..errors import ConvergenceError, SizeGuardError, ValidationError
from ..models import SparseMatrix
from ..nbop import NbOperator, build_nb_operator, nb_apply, nb_dense
from .config import DENSE_CHECK_MAX, SpectralConfig

logger = logging.getLogger(__name__)

DENSE_SPECTRUM_MAX = 4096
DENSE_HERMITIAN_MAX = 2048
DENSE_CENTERED_MAX = 512
SMALL_OPERATOR = 8
ARPACK_K = 6
CROSS_CHECK_RTOL = 1e-4
VANISH_RTOL = 1e-13


def dense_spectrum(M: np.ndarray) -> np.ndarray:
    """Every eigenvalue of a dense matrix (LAPACK Hessenberg-QR).

    Raises:
        SizeGuardError: dimension above 4096
        ConvergenceError: LAPACK failed to converge
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"matrix must be square, got {M.shape}", field="M")
    if M.shape[0] > DENSE_SPECTRUM_MAX:
        raise SizeGuardError(
            f"dense spectrum needs dimension <= {DENSE_SPECTRUM_MAX}",
            limit=DENSE_SPECTRUM_MAX,
            actual=M.shape[0],
        )
    if M.shape[0] == 0:
        return np.zeros(0, dtype=np.complex128)
    try:
        return scipy.linalg.eigvals(M).astype(np.complex128)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"dense eigensolver failed: {e}", partial=None)


@dataclass
class RadiusResult:
    rho: float
    converged: bool
    iterations: int
    method: str
    certificate: List[float] = field(default_factory=list)
    ritz: Optional[complex] = None
    dense_rho: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _support_op(op: NbOperator) -> NbOperator:
    if op.mode.value == "support-restricted":
        return op
    return build_nb_operator(op.H)


def _power_iteration(
    op: NbOperator, cfg: SpectralConfig
) -> Tuple[RadiusResult, np.ndarray]:
    """Gelfand samples r_l = |B^l x|^(1/l) and 2-D Ritz values over restarts."""
    rng = cfg.seed.rng()
    m = op.dim
    max_weight = float(np.abs(op.index.weights).max())
    scale = max_weight * (1 + float(op.index.out_degree.max()))
    best: Optional[RadiusResult] = None
    best_x = np.zeros(m)

    for restart in range(cfg.restarts):
        x = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        x /= np.linalg.norm(x)
        log_growth = 0.0
        certificate: List[float] = []
        ritz: Optional[complex] = None
        converged = False
        vanished = False
        ell = 0
        for ell in range(1, cfg.max_iter + 1):
            y = nb_apply(op, x)
            ny = float(np.linalg.norm(y))
            if ny <= VANISH_RTOL * scale:
                # B^l x vanished: B is nilpotent on this Krylov space
                certificate.append(0.0)
                ritz, converged = 0j, True
                vanished = True
                break
            log_growth += math.log(ny)
            certificate.append(math.exp(log_growth / ell))
            if ell % cfg.ritz_every == 0:
                Q, _ = np.linalg.qr(np.column_stack([x, y / ny]))
                BQ = nb_apply(op, Q)
                T = Q.conj().T @ BQ
                mu, V = np.linalg.eig(T)
                top = int(np.argmax(np.abs(mu)))
                v = Q @ V[:, top]
                residual = np.linalg.norm(BQ @ V[:, top] - mu[top] * v)
                ritz = complex(mu[top])
                if residual <= cfg.iterative_tol * max(abs(ritz), 1e-300):
                    converged = True
                    x = v / np.linalg.norm(v)
                    break
            x = y / ny
        estimate = abs(ritz) if ritz is not None else certificate[-1]
        result = RadiusResult(
            rho=float(estimate),
            converged=converged,
            iterations=ell,
            method="power-vanished" if vanished else "power",
            certificate=certificate,
            ritz=ritz,
        )
        logger.debug(
            f"Power restart {restart}: rho~{result.rho:.6g} after {ell} steps "
            f"(converged={converged})"
        )
        if best is None or result.rho > best.rho:
            best, best_x = result, x
    return best, best_x


def spectral_radius(
    op: NbOperator, cfg: Optional[SpectralConfig] = None
) -> RadiusResult:
    """Estimate rho(B); non-convergence is reported, never raised."""
    cfg = cfg or SpectralConfig()
    op = _support_op(op)
    m = op.dim
    if m == 0:
        return RadiusResult(rho=0.0, converged=True, iterations=0, method="empty")
    if m < SMALL_OPERATOR:
        rho = float(np.abs(dense_spectrum(nb_dense(op))).max())
        return RadiusResult(
            rho=rho, converged=True, iterations=0, method="dense", dense_rho=rho
        )

    result, x = _power_iteration(op, cfg)
    if result.method == "power-vanished":
        return result

    k = min(ARPACK_K, m - 2)
    linop = op.as_linear_operator()
    v0 = x.real.copy() if op.is_real else x
    if not np.any(v0):
        v0 = None
    try:
        values = eigs(
            linop,
            k=k,
            which="LM",
            v0=v0,
            ncv=min(m, max(2 * k + 1, 20)),
            tol=cfg.iterative_tol,
            maxiter=cfg.max_iter * 10,
            return_eigenvectors=False,
        )
        result.rho = float(np.abs(values).max())
        result.converged = True
        result.method = "power+arpack"
    except ArpackNoConvergence as e:
        logger.warning(f"ARPACK did not converge on {op}; keeping power estimate")
        if len(e.eigenvalues):
            result.rho = max(result.rho, float(np.abs(e.eigenvalues).max()))
        result.converged = False

    if m <= min(cfg.dense_check_limit, DENSE_CHECK_MAX):
        dense_rho = float(np.abs(dense_spectrum(nb_dense(op))).max())
        result.dense_rho = dense_rho
        if abs(result.rho - dense_rho) > CROSS_CHECK_RTOL * max(1.0, dense_rho):
            logger.warning(
                f"Iterative rho {result.rho:.8g} disagrees with dense "
                f"{dense_rho:.8g} on {op}"
            )
            result.converged = False
    return result


@dataclass
class HermitianExtremes:
    lambda_max: float
    lambda_min: float
    opnorm: float
    method: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _extremes(values_max: float, values_min: float, method: str) -> HermitianExtremes:
    return HermitianExtremes(
        lambda_max=float(values_max),
        lambda_min=float(values_min),
        opnorm=float(max(abs(values_max), abs(values_min))),
        method=method,
    )


def _iterative_extremes(operator, n: int, cfg: SpectralConfig) -> HermitianExtremes:
    rng = cfg.seed.rng()
    v0 = rng.standard_normal(n)
    if np.issubdtype(operator.dtype, np.complexfloating):
        v0 = v0 + 1j * rng.standard_normal(n)
    try:
        top = eigsh(operator, k=1, which="LA", v0=v0, tol=cfg.iterative_tol,
                    return_eigenvectors=False)
        bottom = eigsh(operator, k=1, which="SA", v0=v0, tol=cfg.iterative_tol,
                       return_eigenvectors=False)
    except ArpackNoConvergence as e:
        raise ConvergenceError(f"Lanczos did not converge: {e}", partial=e.eigenvalues)
    return _extremes(top[0], bottom[0], "lanczos")


def hermitian_extremes(
    H: SparseMatrix, cfg: Optional[SpectralConfig] = None
) -> HermitianExtremes:
    """(lambda_max, lambda_min, ||H||) of a Hermitian matrix.

    Raises:
        ValidationError: H not Hermitian
    """
    cfg = cfg or SpectralConfig()
    if not H.hermitian:
        raise ValidationError("hermitian_extremes needs a Hermitian matrix", field="H")
    if H.n == 0:
        return _extremes(0.0, 0.0, "empty")
    if H.n <= DENSE_HERMITIAN_MAX:
        dense = H.to_dense().real if H.is_real() else H.to_dense()
        values = scipy.linalg.eigvalsh(dense)
        return _extremes(values[-1], values[0], "dense")
    operator = H.csr.real if H.is_real() else H.csr
    return _iterative_extremes(operator, H.n, cfg)


def centered_extremes(
    sample: ErSample, cfg: Optional[SpectralConfig] = None
) -> HermitianExtremes:
    """Extremes of H = d^(-1/2)(A - P) through the matrix-free operator."""
    cfg = cfg or SpectralConfig()
    if sample.directed:
        raise ValidationError(
            "centered_extremes needs a hermitian sample", field="sample"
        )
    if sample.n <= min(DENSE_CENTERED_MAX, sample.dense_limit):
        return hermitian_extremes(sample.H, cfg)
    return _iterative_extremes(sample.centered_operator(), sample.n, cfg)


def operator_norm(H: SparseMatrix, cfg: Optional[SpectralConfig] = None) -> float:
    """||H||: eigenvalue route when Hermitian, largest singular value otherwise."""
    if H.hermitian:
        return hermitian_extremes(H, cfg).opnorm
    if H.nnz == 0:
        return 0.0
    if H.n <= DENSE_HERMITIAN_MAX:
        return float(np.linalg.norm(H.to_dense(), 2))
    return float(svds(H.csr, k=1, return_singular_vectors=False)[0])


def second_adjacency_eigenvalue(
    A: SparseMatrix, cfg: Optional[SpectralConfig] = None
) -> float:
    """Second-largest eigenvalue of a symmetric adjacency matrix."""
    cfg = cfg or SpectralConfig()
    if A.n < 2:
        raise ValidationError("need at least two vertices", field="A")
    if not A.hermitian:
        raise ValidationError("adjacency matrix must be symmetric", field="A")
    if A.n <= DENSE_CENTERED_MAX:
        return float(scipy.linalg.eigvalsh(A.to_dense().real)[-2])
    v0 = cfg.seed.rng().standard_normal(A.n)
    values = eigsh(A.csr.real, k=2, which="LA", v0=v0, tol=cfg.iterative_tol,
                   return_eigenvectors=False)
    return float(np.sort(values)[0])


def max_real_eigenvalue(op: NbOperator, tol: float = 1e-8) -> Optional[float]:
    """Largest eigenvalue with |Im| <= tol (1 + |lambda|); None if there is none."""
    op = _support_op(op)
    spectrum = dense_spectrum(nb_dense(op))
    real = [
        float(lam.real) for lam in spectrum if abs(lam.imag) <= tol * (1 + abs(lam))
    ]
    return max(real) if real else None


@dataclass
class SpectralReport:
    rho_B: float
    max_real_eig_B: Optional[float]
    opnorm_H: float
    lambda_max_H: Optional[float]
    lambda_min_H: Optional[float]
    method: str
    converged: bool
    iterations: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def spectral_report(
    H: SparseMatrix, cfg: Optional[SpectralConfig] = None
) -> SpectralReport:
    cfg = cfg or SpectralConfig()
    op = build_nb_operator(H)
    radius = spectral_radius(op, cfg)
    max_real = None
    if op.m <= DENSE_CHECK_MAX:
        max_real = max_real_eigenvalue(op, cfg.dense_tol * 100)
    if H.hermitian:
        ext = hermitian_extremes(H, cfg)
        lam_max, lam_min, opnorm = ext.lambda_max, ext.lambda_min, ext.opnorm
    else:
        lam_max = lam_min = None
        opnorm = operator_norm(H, cfg)
    return SpectralReport(
        rho_B=radius.rho,
        max_real_eig_B=max_real,
        opnorm_H=opnorm,
        lambda_max_H=lam_max,
        lambda_min_H=lam_min,
        method=radius.method,
        converged=radius.converged,
        iterations=radius.iterations,
    )
