"""
Experiments feature - Tool registration
"""
import asyncio
import logging
from typing import Any, Dict, List, Optional

from ...shared.errors import NbSpectraError
from .handler import ExperimentsHandler

logger = logging.getLogger(__name__)


def register_experiments_tools(mcp) -> List[dict]:
    """
    Register experiment tools with FastMCP

    Args:
        mcp: FastMCP instance to register tools on

    Returns:
        List of tool metadata
    """
    from ...shared.instances import next_step_engine, response_builder

    handler = ExperimentsHandler()

    @mcp.tool(name="experiment_list")
    async def experiment_list() -> Dict[str, Any]:
        """List the shipped experiment configs"""
        try:
            configs = handler.list()
            return response_builder.success(
                data={"configs": configs},
                tool="experiment list",
                message=f"{len(configs)} configs available",
                suggestions=next_step_engine.get_suggestions("experiment list"),
            )
        except NbSpectraError as e:
            logger.error(f"Error in experiment_list: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    @mcp.tool(name="experiment_run")
    async def experiment_run(
        config: str,
        output: Optional[str] = None,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        threads: Optional[int] = None,
    ) -> Dict[str, Any]:
        """Run a shipped config (by name) or a config file and write its CSV"""
        try:
            outcome = await asyncio.to_thread(
                handler.run, config, output, threads, trials, seed
            )
            return response_builder.success(
                data=outcome.to_dict(),
                tool="experiment run",
                message=(
                    f"Wrote {len(outcome.result.records)} records to {outcome.output}"
                ),
                suggestions=next_step_engine.get_suggestions("experiment run"),
            )
        except NbSpectraError as e:
            logger.error(f"Error in experiment_run: {e}")
            return response_builder.error(error=str(e), details=e.to_dict())

    return [
        {"name": "experiment_list", "description": "List shipped experiment configs"},
        {"name": "experiment_run", "description": "Run an experiment config"},
    ]
