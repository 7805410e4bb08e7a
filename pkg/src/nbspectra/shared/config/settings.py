"""Runtime settings read from the environment (and an optional .env file)."""
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from ..errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_DENSE_LIMIT = 2048
MAX_DEFAULT_THREADS = 8


@dataclass(frozen=True)
class Settings:
    """Process-wide knobs; CLI flags and config files override per run."""

    threads: int
    threads_from_env: bool
    log_level: str
    data_dir: Path
    config_path: Optional[Path]
    dense_limit: int

    def resolve_threads(
        self, cli_value: Optional[int] = None, config_value: Optional[int] = None
    ) -> int:
        """CLI flag beats NBSPECTRA_THREADS, which beats the config file."""
        if cli_value is not None:
            return max(1, cli_value)
        if self.threads_from_env:
            return self.threads
        if config_value is not None:
            return max(1, config_value)
        return self.threads


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(
            f"environment variable {name} must be an integer, got {raw!r}"
        )
    if value < 1:
        raise ConfigError(f"environment variable {name} must be >= 1, got {value}")
    return value


def load_settings() -> Settings:
    """Build Settings from the current environment."""
    load_dotenv()

    env_threads = _env_int("NBSPECTRA_THREADS")
    default_threads = min(os.cpu_count() or 1, MAX_DEFAULT_THREADS)
    dense_limit = _env_int("NBSPECTRA_DENSE_LIMIT")
    config_path = os.getenv("NBSPECTRA_CONFIG_PATH")

    settings = Settings(
        threads=env_threads if env_threads is not None else default_threads,
        threads_from_env=env_threads is not None,
        log_level=os.getenv("LOG_LEVEL", "INFO"),
        data_dir=Path(os.getenv("NBSPECTRA_DATA_DIR", "results")),
        config_path=Path(config_path) if config_path else None,
        dense_limit=dense_limit if dense_limit is not None else DEFAULT_DENSE_LIMIT,
    )
    logger.debug(f"Loaded settings: {settings}")
    return settings


# Global instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings() -> None:
    """Forget cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None
