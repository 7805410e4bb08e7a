"""Experiments feature exports"""
from .handler import ExperimentsHandler
from .tool import register_experiments_tools

__all__ = ["ExperimentsHandler", "register_experiments_tools"]
