"""
Lambda-parametrized matrices H(lambda), M(lambda) and the determinant identity.

For lambda^2 != H_ij H_ji on every pair, lambda is an eigenvalue of B exactly
when det(M(lambda) - H(lambda)) = 0, and a null vector y of M - H(lambda)
lifts to an eigenvector x of B.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import GuardError, ValidationError
from ..models import SparseMatrix
from ..nbop import NbOperator, build_nb_operator, nb_apply

logger = logging.getLogger(__name__)

GUARD_EPS = 1e-10
NULL_RTOL = 1e-8
# eigenvalues of B this close to a pole are not checked against the determinant
SKIP_BAND = 1e-6


@dataclass
class LambdaMatrices:
    Hlam: np.ndarray
    Mlam: np.ndarray
    lam: complex
    guard: float
    guard_pair: Tuple[int, int]

    def system(self) -> np.ndarray:
        """M(lambda) - H(lambda)."""
        return np.diag(self.Mlam) - self.Hlam


def _dense(H: SparseMatrix) -> np.ndarray:
    return H.to_dense()


def guard_value(H: SparseMatrix, lam: complex) -> Tuple[float, Tuple[int, int]]:
    """min over all pairs of |lambda^2 - H_ij H_ji| and the pair attaining it."""
    Hd = _dense(H)
    if H.n == 0:
        return float("inf"), (-1, -1)
    dist = np.abs(lam * lam - Hd * Hd.T)
    flat = int(np.argmin(dist))
    i, j = divmod(flat, H.n)
    return float(dist[i, j]), (i, j)


def lambda_matrices(
    H: SparseMatrix, lam: complex, guard: float = GUARD_EPS
) -> LambdaMatrices:
    """H(lambda)_ij = lambda H_ij / (lambda^2 - H_ij H_ji) on the support and
    m_i(lambda) = 1 + sum_k H_ik H_ki / (lambda^2 - H_ik H_ki).

    Raises:
        GuardError: |lambda^2 - H_ij H_ji| <= guard for some pair (i, j)
    """
    lam = complex(lam)
    Hd = _dense(H)
    n = H.n
    if n == 0:
        return LambdaMatrices(
            np.zeros((0, 0), complex), np.zeros(0, complex), lam, float("inf"), (-1, -1)
        )
    prod = Hd * Hd.T
    denom = lam * lam - prod
    dist = np.abs(denom)
    flat = int(np.argmin(dist))
    pair = divmod(flat, n)
    value = float(dist[pair])
    if value <= guard:
        raise GuardError(
            f"lambda={lam} violates the guard at pair {pair}: "
            f"|lambda^2 - H_ij H_ji| = {value:.3g} <= {guard:g}",
            pair=pair,
            value=value,
        )
    support = Hd != 0
    Hlam = np.zeros((n, n), dtype=np.complex128)
    Hlam[support] = lam * Hd[support] / denom[support]
    Mlam = 1.0 + np.sum(prod / denom, axis=1)
    return LambdaMatrices(Hlam=Hlam, Mlam=Mlam, lam=lam, guard=value, guard_pair=pair)


def ib_determinant(
    H: SparseMatrix, lam: complex, guard: float = GUARD_EPS
) -> Tuple[float, complex]:
    """(log|det(M - H(lambda))|, phase) from a pivoted LU factorization."""
    mats = lambda_matrices(H, lam, guard)
    if H.n == 0:
        return 0.0, 1.0 + 0j
    phase, logabs = np.linalg.slogdet(mats.system())
    return float(logabs), complex(phase)


def balanced_logdet(
    H: SparseMatrix, lam: complex, guard: float = GUARD_EPS
) -> Tuple[float, complex]:
    """(log|det|, phase) of M - H(lambda) with every row scaled to unit norm.

    Row i carries the factors 1/(lambda^2 - H_ik H_ki), so near a pole the plain
    determinant grows with them; the scaled one is at most 1 in modulus.
    """
    mats = lambda_matrices(H, lam, guard)
    if H.n == 0:
        return 0.0, 1.0 + 0j
    system = mats.system()
    norms = np.linalg.norm(system, axis=1)
    if np.any(norms == 0):
        return -math.inf, 0j
    phase, logabs = np.linalg.slogdet(system / norms[:, None])
    return float(logabs), complex(phase)


def null_vector(
    H: SparseMatrix, lam: complex, guard: float = GUARD_EPS
) -> Tuple[np.ndarray, float]:
    """Right singular vector of M - H(lambda) for its smallest singular value."""
    system = lambda_matrices(H, lam, guard).system()
    _, s, Vh = np.linalg.svd(system)
    return Vh[-1].conj(), float(s[-1])


@dataclass
class Recovery:
    x: np.ndarray
    residual: float
    null_residual: float
    op: NbOperator


def recover_b_eigvec(
    H: SparseMatrix,
    lam: complex,
    y: np.ndarray,
    guard: float = GUARD_EPS,
    null_rtol: float = NULL_RTOL,
    op: Optional[NbOperator] = None,
) -> Recovery:
    """Lift a null vector y of M - H(lambda) to x with B x = lambda x.

    On support edge (a, b): x_ab = (lambda y_b - H_ba y_a) / (lambda^2 - H_ab H_ba).

    Raises:
        ValidationError: y = 0 or y is not (numerically) a null vector
    """
    y = np.asarray(y, dtype=np.complex128)
    if y.shape != (H.n,):
        raise ValidationError(f"y must have length {H.n}", field="y")
    y_norm = float(np.linalg.norm(y))
    if y_norm == 0:
        raise ValidationError("y must be a nontrivial null vector", field="y")
    mats = lambda_matrices(H, lam, guard)
    system = mats.system()
    null_residual = float(np.linalg.norm(system @ y)) / y_norm
    scale = max(1.0, float(np.linalg.norm(system, 2)))
    if null_residual > null_rtol * scale:
        raise ValidationError(
            f"y is not a null vector of M - H(lambda): residual {null_residual:.3g}",
            field="y",
        )

    op = op or build_nb_operator(H)
    idx = op.index
    lam = mats.lam
    Hd = H.to_dense()
    a, b = idx.tails, idx.heads
    h_ba = Hd[b, a]
    x = (lam * y[b] - h_ba * y[a]) / (lam * lam - idx.weights * h_ba)
    x_norm = float(np.linalg.norm(x))
    if x_norm == 0:
        raise ValidationError("recovered edge vector vanished", field="y")
    residual = float(np.linalg.norm(nb_apply(op, x) - lam * x)) / x_norm
    logger.debug(f"Recovered eigenvector at lambda={lam}: residual {residual:.3g}")
    return Recovery(x=x, residual=residual, null_residual=null_residual, op=op)
