"""
Ihara-Bass feature - Tool registration
"""
import asyncio
import logging
from typing import Any, Dict, List, Optional

from ...shared.errors import NbSpectraError
from ..sampling import SamplingHandler
from .handler import IharaBassHandler

logger = logging.getLogger(__name__)


def register_ihara_bass_tools(mcp) -> List[dict]:
    """
    Register Ihara-Bass tools with FastMCP

    Args:
        mcp: FastMCP instance to register tools on

    Returns:
        List of tool metadata
    """
    from ...shared.instances import next_step_engine, response_builder

    handler = IharaBassHandler()
    sampler = SamplingHandler()

    @mcp.tool(name="ib_check")
    async def ib_check(
        graph: Optional[str] = None,
        matrix: Optional[str] = None,
        weight: float = 1.0,
    ) -> Dict[str, Any]:
        """Check the determinant identity, eigenvector recovery and PSD gap"""
        try:
            H = sampler.resolve_matrix(matrix=matrix, graph=graph, weight=weight)
            result = await asyncio.to_thread(handler.check, H)
            return response_builder.success(
                data=result,
                tool="ib-check",
                message="all checks pass" if result["passed"] else "check failed",
                suggestions=next_step_engine.get_suggestions(
                    "ib-check", graph=graph, matrix=matrix
                ),
            )
        except NbSpectraError as e:
            logger.error(f"Error in ib_check: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="ib_regular")
    async def ib_regular(graph: str) -> Dict[str, Any]:
        """Compare the spectrum of B with the regular-graph factorization"""
        try:
            result = await asyncio.to_thread(handler.regular, graph)
            return response_builder.success(
                data=result,
                tool="ib-regular",
                suggestions=next_step_engine.get_suggestions("ib-regular"),
            )
        except NbSpectraError as e:
            logger.error(f"Error in ib_regular: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    return [
        {"name": "ib_check", "description": "Ihara-Bass determinant checks"},
        {"name": "ib_regular", "description": "Regular-graph spectrum of B"},
    ]
