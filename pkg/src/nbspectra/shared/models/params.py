"""
Norms, ensemble parameters and the sampling-assumption check.
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from ..errors import ValidationError
from .matrix import SparseMatrix
from .profile import ProbabilityProfile

logger = logging.getLogger(__name__)

ASSUMPTION_TOL = 1e-12


def norm_2_to_inf(H: SparseMatrix) -> float:
    """Largest Euclidean row length, max_i sqrt(sum_j |H_ij|^2)."""
    if H.nnz == 0:
        return 0.0
    coo = H.csr.tocoo()
    row_sq = np.bincount(coo.row, weights=np.abs(coo.data) ** 2, minlength=H.n)
    return float(math.sqrt(row_sq.max()))


def norm_1_to_inf(H: SparseMatrix) -> float:
    """Largest absolute entry."""
    if H.nnz == 0:
        return 0.0
    return float(np.abs(H.csr.data).max())


@dataclass
class NormReport:
    norm2inf: float
    norm1inf: float
    opnorm: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def norm_report(H: SparseMatrix, with_opnorm: bool = False) -> NormReport:
    """Both entrywise norms; the operator norm is filled on request."""
    report = NormReport(norm2inf=norm_2_to_inf(H), norm1inf=norm_1_to_inf(H))
    if with_opnorm:
        from ..spectra import operator_norm

        report.opnorm = operator_norm(H)
    return report


@dataclass(frozen=True)
class EnsembleParams:
    """Sparsity scale q, structure kappa, max expected degree d and dimension n."""

    n: int
    d: float
    kappa: float
    q: float
    q_raw: float

    def __post_init__(self) -> None:
        if self.kappa < 1 - ASSUMPTION_TOL:
            raise ValidationError(
                f"kappa must be >= 1, got {self.kappa}", field="kappa"
            )
        if self.q <= 0:
            raise ValidationError(f"q must be positive, got {self.q}", field="q")
        if self.d < 0:
            raise ValidationError(f"d must be non-negative, got {self.d}", field="d")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def capped_q(d: float, n: int, kappa: float) -> float:
    """q = min(sqrt(d), n^(1/13) kappa^(-1/12))."""
    return min(math.sqrt(d), n ** (1.0 / 13.0) * kappa ** (-1.0 / 12.0))


def derive_er_parameters(
    P: ProbabilityProfile, n: Optional[int] = None
) -> EnsembleParams:
    """d = max row sum of P, kappa = n * max p / d and the capped q.

    Raises:
        ValidationError: all-zero profile ("degenerate profile") or n mismatch
    """
    n = P.n if n is None else n
    if n != P.n:
        raise ValidationError(f"profile has n={P.n}, expected {n}", field="n")
    d = float(P.row_sums().max()) if n else 0.0
    if d <= 0:
        raise ValidationError("degenerate profile", field="profile")
    kappa = n * P.max_entry() / d
    q = capped_q(d, n, kappa)
    params = EnsembleParams(n=n, d=d, kappa=kappa, q=q, q_raw=math.sqrt(d))
    logger.debug(f"ER parameters: {params}")
    return params


def variance_parameters(S: ProbabilityProfile, q: float) -> EnsembleParams:
    """Parameters for ensembles given directly by a variance profile and scale q."""
    n = S.n
    kappa = max(1.0, n * S.max_entry())
    return EnsembleParams(n=n, d=q * q, kappa=kappa, q=q, q_raw=q)


@dataclass
class AssumptionCheck:
    name: str
    passed: bool
    value: float
    limit: float


@dataclass
class AssumptionReport:
    checks: Dict[str, AssumptionCheck] = field(default_factory=dict)
    variance_source: str = "profile"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "variance_source": self.variance_source,
            "checks": {k: asdict(v) for k, v in self.checks.items()},
        }


def validate_assumptions(
    H: SparseMatrix,
    params: EnsembleParams,
    variance: Optional[ProbabilityProfile] = None,
) -> AssumptionReport:
    """Check row-variance sums, the entry-variance consequence and the entry bound.

    Without a variance profile the realized |H_ij|^2 stand in for the variances.
    Failures are returned as data, never raised.
    """
    report = AssumptionReport()
    if variance is not None:
        row_var = float(variance.row_sums().max()) if variance.n else 0.0
        max_var = variance.max_entry()
    else:
        report.variance_source = "realized"
        row_var = norm_2_to_inf(H) ** 2
        max_var = norm_1_to_inf(H) ** 2

    n = max(params.n, 1)
    entry = norm_1_to_inf(H)
    report.checks["row_variance"] = AssumptionCheck(
        "row_variance", row_var <= 1 + ASSUMPTION_TOL, row_var, 1.0
    )
    report.checks["entry_variance"] = AssumptionCheck(
        "entry_variance",
        max_var <= params.kappa / n + ASSUMPTION_TOL,
        max_var,
        params.kappa / n,
    )
    report.checks["entry_bound"] = AssumptionCheck(
        "entry_bound", entry <= 1 / params.q + ASSUMPTION_TOL, entry, 1 / params.q
    )
    for check in report.checks.values():
        if not check.passed:
            logger.info(f"Assumption {check.name} fails: {check.value} > {check.limit}")
    return report
