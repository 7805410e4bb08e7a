"""
Spectra feature - Business logic handler
"""
import logging
from dataclasses import replace
from typing import Any, Dict, Optional

from ...shared.ensembles import SeedSpec
from ...shared.iharabass import norm_bound
from ...shared.models import SparseMatrix, norm_report
from ...shared.nbop import build_nb_operator
from ...shared.spectra import (
    SpectralConfig,
    TraceMode,
    gelfand_bound,
    spectral_radius,
    spectral_report,
    trace_moment,
)

logger = logging.getLogger(__name__)


class SpectraHandler:
    """rho(B), norms of H and trace moments"""

    def config(
        self,
        tol: Optional[float] = None,
        seed: int = 0,
        sign_vectors: Optional[int] = None,
    ) -> SpectralConfig:
        cfg = SpectralConfig(tol=tol, seed=SeedSpec(seed))
        return cfg if sign_vectors is None else replace(cfg, sign_vectors=sign_vectors)

    def rho_b(self, H: SparseMatrix, cfg: SpectralConfig) -> Dict[str, Any]:
        """
        Spectral radius of B with its certificate

        Args:
            H: weight matrix
            cfg: solver settings

        Returns:
            Radius result plus the full spectral report of H
        """
        radius = spectral_radius(build_nb_operator(H), cfg)
        if not radius.converged:
            logger.warning(
                f"rho(B) did not converge after {radius.iterations} iterations"
            )
        return {
            "H": repr(H),
            "radius": radius.to_dict(),
            "report": spectral_report(H, cfg).to_dict(),
        }

    def norm_h(self, H: SparseMatrix, cfg: SpectralConfig) -> Dict[str, Any]:
        """Norms of H and the two norm bounds in terms of rho(B)"""
        norms = norm_report(H, with_opnorm=True)
        rho = spectral_radius(build_nb_operator(H), cfg).rho
        bound = norm_bound(H, rho, norms.opnorm)
        return {"H": repr(H), "norms": norms.to_dict(), "bound": bound.to_dict()}

    def trace(
        self, H: SparseMatrix, ell: int, mode: str, cfg: SpectralConfig
    ) -> Dict[str, Any]:
        """tr B^l B^{*l} and the Gelfand estimate it gives for rho(B)"""
        op = build_nb_operator(H)
        moment = trace_moment(op, ell, TraceMode(mode), cfg)
        return {
            "ell": ell,
            "moment": moment.to_dict(),
            "gelfand_bound": gelfand_bound(moment, ell),
        }
