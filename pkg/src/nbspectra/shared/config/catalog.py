"""Catalog of shipped experiment configs

Built-in configs live next to the experiments feature and are listed in its
index.yaml. A second directory named by NBSPECTRA_CONFIG_PATH is merged on
top, so local configs can extend or shadow the shipped ones.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ..errors import NotFoundError
from .experiment import ExperimentConfig, load_config
from .settings import get_settings

logger = logging.getLogger(__name__)

PACKAGE_DIR = Path(__file__).resolve().parents[2]
BUILTIN_DIR = PACKAGE_DIR / "features" / "experiments" / "configs"
INDEX_FILE = "index.yaml"
CONFIG_SUFFIXES = (".conf", ".yaml", ".yml")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    path: Path
    description: str = ""
    golden: Optional[Path] = None
    source: str = "builtin"

    def load(self) -> ExperimentConfig:
        return load_config(self.path)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "path": str(self.path),
            "description": self.description,
            "golden": str(self.golden) if self.golden else None,
            "source": self.source,
        }


def _read_index(directory: Path, source: str) -> Dict[str, CatalogEntry]:
    """Entries from directory/index.yaml, or one entry per config file."""
    entries: Dict[str, CatalogEntry] = {}
    index = directory / INDEX_FILE
    if index.exists():
        try:
            with open(index, "r", encoding="utf-8") as f:
                listed = yaml.safe_load(f) or []
        except yaml.YAMLError as e:
            logger.error(f"Failed to read catalog index {index}: {e}")
            listed = []
        for item in listed:
            name = item["name"]
            golden = item.get("golden")
            entries[name] = CatalogEntry(
                name=name,
                path=directory / item["file"],
                description=item.get("description", ""),
                golden=directory / golden if golden else None,
                source=source,
            )
        return entries

    for file in sorted(directory.iterdir()):
        if file.suffix in CONFIG_SUFFIXES and file.name != INDEX_FILE:
            entries[file.stem] = CatalogEntry(name=file.stem, path=file, source=source)
    return entries


class ExperimentCatalog:
    """Shipped configs plus the optional external directory"""

    def __init__(
        self, builtin_dir: Path = BUILTIN_DIR, external_dir: Optional[Path] = None
    ):
        self.builtin_dir = builtin_dir
        self.external_dir = external_dir
        if external_dir is not None and not external_dir.is_dir():
            logger.warning(
                f"NBSPECTRA_CONFIG_PATH set but {external_dir} is not a directory"
            )
            self.external_dir = None
        self._entries: Optional[Dict[str, CatalogEntry]] = None

    def entries(self) -> Dict[str, CatalogEntry]:
        if self._entries is None:
            entries: Dict[str, CatalogEntry] = {}
            if self.builtin_dir.is_dir():
                entries.update(_read_index(self.builtin_dir, "builtin"))
            if self.external_dir is not None:
                external = _read_index(self.external_dir, "external")
                logger.info(
                    f"Loaded {len(external)} external configs from {self.external_dir}"
                )
                entries.update(external)
            self._entries = entries
        return self._entries

    def names(self) -> List[str]:
        return sorted(self.entries())

    def get(self, name: str) -> CatalogEntry:
        entry = self.entries().get(name)
        if entry is None:
            raise NotFoundError(
                f"Experiment config '{name}' not found",
                resource_type="config",
                resource_id=name,
                suggestions=self.names(),
            )
        return entry

    def list(self) -> List[Dict[str, Any]]:
        return [self.entries()[name].to_dict() for name in self.names()]


# Global instance for easy access
_catalog: Optional[ExperimentCatalog] = None


def get_catalog() -> ExperimentCatalog:
    """Get or create the global catalog instance"""
    global _catalog
    if _catalog is None:
        _catalog = ExperimentCatalog(external_dir=get_settings().config_path)
    return _catalog


def reset_catalog() -> None:
    global _catalog
    _catalog = None
