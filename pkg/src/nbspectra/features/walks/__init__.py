"""Walks feature exports"""
from .handler import WalksHandler
from .tool import register_walks_tools

__all__ = ["WalksHandler", "register_walks_tools"]
