"""Ihara-Bass feature exports"""
from .handler import IharaBassHandler
from .tool import register_ihara_bass_tools

__all__ = ["IharaBassHandler", "register_ihara_bass_tools"]
