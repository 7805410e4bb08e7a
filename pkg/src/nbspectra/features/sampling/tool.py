"""
Sampling feature - Tool registration
"""
import asyncio
import logging
from typing import Any, Dict, List, Optional

from ...shared.errors import NbSpectraError
from .handler import SamplingHandler

logger = logging.getLogger(__name__)


def register_sampling_tools(mcp) -> List[dict]:
    """
    Register sampling tools with FastMCP

    Args:
        mcp: FastMCP instance to register tools on

    Returns:
        List of tool metadata
    """
    from ...shared.instances import next_step_engine, response_builder

    handler = SamplingHandler()

    @mcp.tool(name="sample")
    async def sample(
        ensemble: str = "hermitian-er",
        n: Optional[int] = None,
        d: Optional[float] = None,
        q: Optional[float] = None,
        graph: Optional[str] = None,
        blocks: Optional[List[int]] = None,
        block_probs: Optional[List[List[float]]] = None,
        seed: int = 0,
        trial: int = 0,
    ) -> Dict[str, Any]:
        """Draw one seeded realization of an ensemble"""
        try:
            spec = handler.build_spec(
                ensemble,
                n=n,
                d=d,
                q=q,
                graph=graph,
                blocks=blocks,
                block_probs=block_probs,
            )
            result = await asyncio.to_thread(handler.sample, spec, seed, trial)
            return response_builder.success(
                data=result,
                tool="sample",
                message=f"Sampled {ensemble} (seed={seed}, trial={trial})",
                suggestions=next_step_engine.get_suggestions(
                    "sample", ensemble=ensemble, seed=seed
                ),
            )
        except NbSpectraError as e:
            logger.error(f"Error in sample: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    return [
        {
            "name": "sample",
            "description": "Draw one seeded realization of an ensemble",
        }
    ]
