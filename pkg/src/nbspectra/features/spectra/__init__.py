"""Spectra feature exports"""
from .handler import SpectraHandler
from .tool import register_spectra_tools

__all__ = ["SpectraHandler", "register_spectra_tools"]
