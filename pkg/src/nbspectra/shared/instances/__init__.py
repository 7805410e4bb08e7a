"""
Shared instances for the nbspectra server and CLI
Ensures single instances are used across the application
"""
import logging

from ..config import get_catalog, get_settings
from ..response import NextStepEngine, ResponseBuilder

# Setup logging
logger = logging.getLogger(__name__)

SERVER_NAME = "nbspectra"

# Core services - created once, used everywhere
settings = get_settings()
response_builder = ResponseBuilder(SERVER_NAME)
next_step_engine = NextStepEngine()
catalog = get_catalog()

logger.debug(f"Shared instances created for {SERVER_NAME}")

__all__ = [
    "SERVER_NAME",
    "settings",
    "response_builder",
    "next_step_engine",
    "catalog",
]
