"""
Deterministic bounds on ||H|| in terms of rho(B) and the entrywise norms, and
the positive-semidefinite gap behind them.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

from ..errors import ValidationError
from ..models import SparseMatrix, norm_1_to_inf, norm_2_to_inf
from ..nbop import build_nb_operator
from ..spectra import hermitian_extremes, max_real_eigenvalue, operator_norm

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-8
HYPOTHESIS_TOL = 1e-12


def f_profile(x: float) -> float:
    """f(x) = x + 1/x for x >= 1, else 2."""
    if x < 0:
        raise ValidationError(f"f is defined on x >= 0, got {x}", field="x")
    return x + 1.0 / x if x >= 1 else 2.0


@dataclass
class BoundReport:
    rho_B: float
    norm2inf: float
    norm1inf: float
    opnorm: float
    f_value: float
    delta: float
    lambda1: float
    thm_bound: float
    cor_bound: float
    proof_bound: float
    thm_satisfied: bool
    cor_satisfied: bool
    proof_satisfied: bool

    @property
    def satisfied(self) -> bool:
        return self.thm_satisfied and self.cor_satisfied and self.proof_satisfied

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["satisfied"] = self.satisfied
        return result


def _holds(value: float, bound: float) -> bool:
    return value <= bound + BOUND_SLACK * max(1.0, abs(bound))


def norm_bound(
    H: SparseMatrix, rho_B: float, opnorm: Optional[float] = None
) -> BoundReport:
    """Both right-hand sides, plus the intermediate bound used to prove them.

    thm:   n2 f(rho/n2) + 7 n1
    cor:   2 n2 + (rho - n2)_+^2 / n2 + 7 n1
    proof: n2 (f(lambda1) + 6 delta)
           with delta = n1/n2, lambda1 = max(1 + sqrt(delta), rho/n2)
    """
    n2 = norm_2_to_inf(H)
    n1 = norm_1_to_inf(H)
    if opnorm is None:
        opnorm = operator_norm(H)
    if n2 == 0:
        return BoundReport(
            rho_B=rho_B, norm2inf=0.0, norm1inf=0.0, opnorm=opnorm, f_value=2.0,
            delta=0.0, lambda1=1.0, thm_bound=0.0, cor_bound=0.0, proof_bound=0.0,
            thm_satisfied=_holds(opnorm, 0.0), cor_satisfied=_holds(opnorm, 0.0),
            proof_satisfied=_holds(opnorm, 0.0),
        )
    ratio = rho_B / n2
    f_value = f_profile(ratio)
    thm = n2 * f_value + 7 * n1
    cor = 2 * n2 + max(rho_B - n2, 0.0) ** 2 / n2 + 7 * n1
    delta = n1 / n2
    lambda1 = max(1 + math.sqrt(delta), ratio)
    proof = n2 * (f_profile(lambda1) + 6 * delta)
    report = BoundReport(
        rho_B=rho_B,
        norm2inf=n2,
        norm1inf=n1,
        opnorm=opnorm,
        f_value=f_value,
        delta=delta,
        lambda1=lambda1,
        thm_bound=thm,
        cor_bound=cor,
        proof_bound=proof,
        thm_satisfied=_holds(opnorm, thm),
        cor_satisfied=_holds(opnorm, cor),
        proof_satisfied=_holds(opnorm, proof),
    )
    if not report.satisfied:
        logger.warning(f"Norm bound violated: {report.to_dict()}")
    return report


def _check_delta(delta: float) -> None:
    if not 0 <= delta <= 1:
        raise ValidationError(f"delta must lie in [0, 1], got {delta}", field="delta")


def lambda0(H: SparseMatrix, delta: float) -> float:
    """max{1 + sqrt(delta), largest real eigenvalue of B} (dense path)."""
    _check_delta(delta)
    top_real = max_real_eigenvalue(build_nb_operator(H))
    base = 1 + math.sqrt(delta)
    return base if top_real is None else max(base, top_real)


def psd_hypotheses(H: SparseMatrix, delta: float) -> List[str]:
    """Names of the failed hypotheses (empty when both hold)."""
    failed = []
    if norm_1_to_inf(H) > delta + HYPOTHESIS_TOL:
        failed.append(
            f"max |H_ij| = {norm_1_to_inf(H):.6g} exceeds delta = {delta:.6g}"
        )
    row_sq = norm_2_to_inf(H) ** 2
    if row_sq > 1 + delta + HYPOTHESIS_TOL:
        failed.append(f"max row sum of squares = {row_sq:.6g} exceeds 1 + delta")
    return failed


def psd_gap(H: SparseMatrix, delta: float) -> float:
    """Smallest eigenvalue of (lambda0 + 1/lambda0 + 6 delta) I - H.

    Raises:
        ValidationError: delta outside [0, 1] or a failed hypothesis
    """
    _check_delta(delta)
    if not H.hermitian:
        raise ValidationError("psd_gap needs a Hermitian matrix", field="H")
    failed = psd_hypotheses(H, delta)
    if failed:
        raise ValidationError(
            "hypotheses fail: " + "; ".join(failed), field="H", suggestions=failed
        )
    lam0 = lambda0(H, delta)
    ceiling = lam0 + 1 / lam0 + 6 * delta
    top = hermitian_extremes(H).lambda_max if H.n else 0.0
    return float(ceiling - top)

