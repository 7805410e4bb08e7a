"""
Spectra feature - Tool registration
"""
import asyncio
import logging
from typing import Any, Dict, List, Optional

from ...shared.errors import NbSpectraError
from ..sampling import SamplingHandler
from .handler import SpectraHandler

logger = logging.getLogger(__name__)


def register_spectra_tools(mcp) -> List[dict]:
    """
    Register spectral tools with FastMCP

    Args:
        mcp: FastMCP instance to register tools on

    Returns:
        List of tool metadata
    """
    from ...shared.instances import next_step_engine, response_builder

    handler = SpectraHandler()
    sampler = SamplingHandler()

    @mcp.tool(name="rho_b")
    async def rho_b(
        graph: Optional[str] = None,
        matrix: Optional[str] = None,
        weight: float = 1.0,
        tol: Optional[float] = None,
        seed: int = 0,
    ) -> Dict[str, Any]:
        """Spectral radius of the nonbacktracking operator of H"""
        try:
            H = sampler.resolve_matrix(matrix=matrix, graph=graph, weight=weight)
            result = await asyncio.to_thread(
                handler.rho_b, H, handler.config(tol, seed)
            )
            return response_builder.success(
                data=result,
                tool="rho-b",
                message=f"rho(B) = {result['radius']['rho']:.10g}",
                suggestions=next_step_engine.get_suggestions(
                    "rho-b", graph=graph, matrix=matrix
                ),
            )
        except NbSpectraError as e:
            logger.error(f"Error in rho_b: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="norm_h")
    async def norm_h(
        graph: Optional[str] = None,
        matrix: Optional[str] = None,
        weight: float = 1.0,
        tol: Optional[float] = None,
    ) -> Dict[str, Any]:
        """Norms of H and the norm bounds in terms of rho(B)"""
        try:
            H = sampler.resolve_matrix(matrix=matrix, graph=graph, weight=weight)
            result = await asyncio.to_thread(handler.norm_h, H, handler.config(tol))
            return response_builder.success(
                data=result,
                tool="norm-h",
                suggestions=next_step_engine.get_suggestions(
                    "norm-h", graph=graph, matrix=matrix
                ),
            )
        except NbSpectraError as e:
            logger.error(f"Error in norm_h: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="trace_moment")
    async def trace_moment(
        ell: int,
        graph: Optional[str] = None,
        matrix: Optional[str] = None,
        weight: float = 1.0,
        mode: str = "exact-small",
        seed: int = 0,
        sign_vectors: Optional[int] = None,
    ) -> Dict[str, Any]:
        """tr B^l B^{*l} and its Gelfand bound on rho(B)"""
        try:
            H = sampler.resolve_matrix(matrix=matrix, graph=graph, weight=weight)
            cfg = handler.config(seed=seed, sign_vectors=sign_vectors)
            result = await asyncio.to_thread(handler.trace, H, ell, mode, cfg)
            return response_builder.success(
                data=result,
                tool="trace-moment",
                suggestions=next_step_engine.get_suggestions("trace-moment"),
            )
        except NbSpectraError as e:
            logger.error(f"Error in trace_moment: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    return [
        {"name": "rho_b", "description": "Spectral radius of B"},
        {"name": "norm_h", "description": "Norms of H and the rho(B) bounds"},
        {"name": "trace_moment", "description": "Trace moments of B"},
    ]
