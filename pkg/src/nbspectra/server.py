"""
nbspectra tool server - FastMCP implementation with per-feature loading
"""
import logging
import sys
from importlib import import_module
from typing import Any, Dict, List, Tuple

from fastmcp import FastMCP

from . import __version__
from .shared.instance import get_instance_config, should_load_feature
from .shared.instances import SERVER_NAME, next_step_engine, response_builder
from .shared.walks import available_fixtures

logger = logging.getLogger(__name__)

# feature name -> (module, register function)
FEATURES: Dict[str, Tuple[str, str]] = {
    "sampling": (".features.sampling.tool", "register_sampling_tools"),
    "spectra": (".features.spectra.tool", "register_spectra_tools"),
    "ihara_bass": (".features.ihara_bass.tool", "register_ihara_bass_tools"),
    "walks": (".features.walks.tool", "register_walks_tools"),
    "experiments": (".features.experiments.tool", "register_experiments_tools"),
}


def load_features(mcp: FastMCP) -> List[Tuple[str, int]]:
    """Register the tools of every enabled feature"""
    features_loaded = []
    for name, (module_name, register_name) in FEATURES.items():
        if not should_load_feature(name):
            continue
        try:
            register = getattr(import_module(module_name, __package__), register_name)
            tools = register(mcp)
            features_loaded.append((name, len(tools)))
            logger.info(f"Loaded {name} feature with {len(tools)} tools")
        except Exception as e:
            logger.error(f"Failed to load {name} feature: {e}", exc_info=True)

    total_tools = sum(count for _, count in features_loaded)
    logger.info(
        f"Loaded {len(features_loaded)} features with {total_tools} tools total"
    )
    return features_loaded


def create_server() -> FastMCP:
    """FastMCP instance with the server info tool and all enabled features"""
    mcp = FastMCP(SERVER_NAME)

    @mcp.tool(name=SERVER_NAME)
    async def get_server_info() -> Dict[str, Any]:
        """Get server capabilities"""
        config = get_instance_config()
        return response_builder.build(
            data={
                "name": SERVER_NAME,
                "version": __version__,
                "description": config["description"],
                "features": config["features"],
                "fixtures": available_fixtures(),
            },
            tool=SERVER_NAME,
            message=f"{SERVER_NAME} server ready",
            suggestions=next_step_engine.get_suggestions("experiment list"),
        )

    features = load_features(mcp)
    logger.info(f"{SERVER_NAME} server initialized with features: {features}")
    return mcp


def serve() -> int:
    """Run the server on stdio - NEVER wrap in asyncio.run()"""
    try:
        logger.info(f"Starting {SERVER_NAME} FastMCP server")
        create_server().run()
    except KeyboardInterrupt:
        logger.info("Server shutdown requested")
    except Exception as e:
        logger.error(f"Server runtime error: {e}", exc_info=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(serve())
