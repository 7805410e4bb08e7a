"""
Ihara-Bass feature - Business logic handler
"""
import logging
from typing import Any, Dict, List

import numpy as np

from ...shared.errors import GuardError, ValidationError
from ...shared.iharabass import (
    GUARD_EPS,
    SKIP_BAND,
    guard_value,
    ib_equivalence,
    match_spectra,
    null_vector,
    psd_gap,
    psd_hypotheses,
    recover_b_eigvec,
    regular_b_spectrum,
)
from ...shared.models import (
    SparseMatrix,
    adjacency_eigenvalues,
    graph_by_name,
    named_matrix,
    norm_1_to_inf,
    norm_2_to_inf,
    regular_degree,
)
from ...shared.nbop import build_nb_operator, nb_dense
from ...shared.spectra import dense_spectrum

logger = logging.getLogger(__name__)

RECOVERY_TOL = 1e-6
REGULAR_TOL = 1e-8


class IharaBassHandler:
    """Determinant identity, eigenvector recovery and the PSD gap"""

    def recover_all(self, H: SparseMatrix, guard: float = GUARD_EPS) -> Dict[str, Any]:
        """
        Lift a null vector at every guarded eigenvalue of B and report residuals

        Eigenvalues within SKIP_BAND of a pole, or refused by the guard, are
        skipped. Any other failure to produce an eigenvector fails the check.
        """
        op = build_nb_operator(H)
        residuals: List[float] = []
        failed: List[complex] = []
        skipped = 0
        for lam in dense_spectrum(nb_dense(op)):
            lam = complex(lam)
            if guard_value(H, lam)[0] <= SKIP_BAND:
                skipped += 1
                continue
            try:
                y, _ = null_vector(H, lam, guard)
                residuals.append(recover_b_eigvec(H, lam, y, guard, op=op).residual)
            except GuardError as e:
                logger.debug(f"Guard refused {lam}: {e}")
                skipped += 1
            except ValidationError as e:
                logger.warning(f"No eigenvector recovered at {lam}: {e}")
                failed.append(lam)
        worst = max(residuals) if residuals else 0.0
        return {
            "recovered": len(residuals),
            "skipped": skipped,
            "failed": [{"re": z.real, "im": z.imag} for z in failed],
            "worst_residual": worst,
            "passed": not failed and worst <= RECOVERY_TOL,
        }

    def psd(self, H: SparseMatrix) -> Dict[str, Any]:
        """PSD gap at the smallest delta meeting both hypotheses, when it is <= 1"""
        if not H.hermitian:
            return {"applicable": False, "reason": "H is not Hermitian"}
        delta = max(norm_1_to_inf(H), norm_2_to_inf(H) ** 2 - 1, 0.0)
        if delta > 1 or psd_hypotheses(H, delta):
            return {"applicable": False, "delta": delta}
        gap = psd_gap(H, delta)
        return {"applicable": True, "delta": delta, "gap": gap, "passed": gap >= -1e-8}

    def check(self, H: SparseMatrix, guard: float = GUARD_EPS) -> Dict[str, Any]:
        """
        Full Ihara-Bass check of one matrix

        Returns:
            Equivalence report, eigenvector recovery, PSD gap and an overall flag
        """
        equivalence = ib_equivalence(H, guard)
        recovery = self.recover_all(H, guard)
        psd = self.psd(H)
        passed = equivalence.passed and recovery["passed"] and psd.get("passed", True)
        logger.info(f"Ihara-Bass check on {H}: {'pass' if passed else 'FAIL'}")
        return {
            "H": repr(H),
            "equivalence": equivalence.to_dict(),
            "recovery": recovery,
            "psd": psd,
            "passed": passed,
        }

    def regular(self, graph: str) -> Dict[str, Any]:
        """Dense spectrum of B against the factorization for regular graphs"""
        G = graph_by_name(graph)
        try:
            d = regular_degree(G)
        except ValueError:
            raise ValidationError(f"graph '{graph}' is not regular", field="graph")
        expected = regular_b_spectrum(adjacency_eigenvalues(G), d, G.number_of_edges())
        actual = dense_spectrum(nb_dense(build_nb_operator(named_matrix(graph))))
        distance = max(
            match_spectra(expected, actual, REGULAR_TOL) or 0.0,
            match_spectra(actual, expected, REGULAR_TOL) or 0.0,
        )
        rho = float(np.max(np.abs(actual))) if actual.size else 0.0
        return {
            "graph": graph,
            "degree": d,
            "rho_B": rho,
            "expected_rho": float(d - 1),
            "spectrum_distance": distance,
            "passed": abs(rho - (d - 1)) <= REGULAR_TOL and distance <= 1e-6,
        }
