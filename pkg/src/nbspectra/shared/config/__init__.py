"""Configuration management for nbspectra"""
from .catalog import CatalogEntry, ExperimentCatalog, get_catalog, reset_catalog
from .experiment import (
    ExperimentConfig,
    ExperimentKind,
    GridMode,
    load_config,
    parse_config,
    parse_yaml_config,
)
from .settings import Settings, get_settings, load_settings, reset_settings

__all__ = [
    "CatalogEntry",
    "ExperimentCatalog",
    "ExperimentConfig",
    "ExperimentKind",
    "GridMode",
    "Settings",
    "get_catalog",
    "get_settings",
    "load_config",
    "load_settings",
    "parse_config",
    "parse_yaml_config",
    "reset_catalog",
    "reset_settings",
]
