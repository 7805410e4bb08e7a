"""Sampling feature exports"""
from .handler import SamplingHandler
from .tool import register_sampling_tools

__all__ = ["SamplingHandler", "register_sampling_tools"]
