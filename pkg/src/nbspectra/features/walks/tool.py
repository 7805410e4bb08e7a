"""
Walks feature - Tool registration
"""
import asyncio
import logging
from typing import Any, Dict, List, Optional

from ...shared.errors import NbSpectraError
from .handler import WalksHandler

logger = logging.getLogger(__name__)


def register_walks_tools(mcp) -> List[dict]:
    """
    Register walk combinatorics tools with FastMCP

    Args:
        mcp: FastMCP instance to register tools on

    Returns:
        List of tool metadata
    """
    from ...shared.instances import next_step_engine, response_builder

    handler = WalksHandler()

    @mcp.tool(name="walks_enumerate")
    async def walks_enumerate(
        n: int, ell: int, mode: str = "hermitian", show: int = 10
    ) -> Dict[str, Any]:
        """Count C~, C and C_0 over [n]"""
        try:
            result = await asyncio.to_thread(handler.enumerate, n, ell, mode, show)
            return response_builder.success(
                data=result,
                tool="walks enumerate",
                suggestions=next_step_engine.get_suggestions(
                    "walks enumerate", n=n, ell=ell, mode=mode
                ),
            )
        except NbSpectraError as e:
            logger.error(f"Error in walks_enumerate: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="walks_reduce")
    async def walks_reduce(path: str, normalize: bool = True) -> Dict[str, Any]:
        """Reduce a path, directed pair or fixture to (U, zeta, k, gamma)"""
        try:
            result = handler.reduce(path, normalize)
            return response_builder.success(
                data=result,
                tool="walks reduce",
                suggestions=next_step_engine.get_suggestions("walks reduce"),
            )
        except NbSpectraError as e:
            logger.error(f"Error in walks_reduce: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="walks_verify")
    async def walks_verify(
        n: int,
        ell: int,
        mode: str = "hermitian",
        samples: Optional[int] = None,
        seed: int = 0,
    ) -> Dict[str, Any]:
        """Sweep the reduction properties over C_0 or a sample of it"""
        try:
            result = await asyncio.to_thread(
                handler.verify, n, ell, mode, samples, seed
            )
            return response_builder.success(
                data=result,
                tool="walks verify",
                message="all reductions pass" if result["passed"] else "sweep failed",
                suggestions=next_step_engine.get_suggestions("walks verify"),
            )
        except NbSpectraError as e:
            logger.error(f"Error in walks_verify: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="walks_moments")
    async def walks_moments(
        ell: int,
        graph: Optional[str] = None,
        q: Optional[float] = None,
        n: Optional[int] = None,
        d: Optional[float] = None,
    ) -> Dict[str, Any]:
        """Exact path-sum moment against the realization average"""
        try:
            spec = handler.moment_spec(graph, q, n, d)
            result = await asyncio.to_thread(handler.moments, spec, ell)
            return response_builder.success(data=result, tool="walks moments")
        except NbSpectraError as e:
            logger.error(f"Error in walks_moments: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    return [
        {"name": "walks_enumerate", "description": "Count the constrained path sets"},
        {"name": "walks_reduce", "description": "Reduce a path to (U, zeta, k, gamma)"},
        {"name": "walks_verify", "description": "Reduction property sweep"},
        {"name": "walks_moments", "description": "Exact trace-moment oracles"},
    ]
