"""nbspectra features exports"""
from .experiments import register_experiments_tools
from .ihara_bass import register_ihara_bass_tools
from .sampling import register_sampling_tools
from .spectra import register_spectra_tools
from .walks import register_walks_tools

__all__ = [
    "register_experiments_tools",
    "register_ihara_bass_tools",
    "register_sampling_tools",
    "register_spectra_tools",
    "register_walks_tools",
]
