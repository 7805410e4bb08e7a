"""Shared pytest setup for nbspectra."""

from pathlib import Path

import pytest

# Add src to path for testing
import sys
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))


def pytest_addoption(parser):
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="run slow Monte Carlo tests",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    """Each test sees settings rebuilt from its own environment."""
    from nbspectra.shared.config import reset_catalog, reset_settings

    for var in ("NBSPECTRA_THREADS", "NBSPECTRA_DENSE_LIMIT", "NBSPECTRA_CONFIG_PATH"):
        monkeypatch.delenv(var, raising=False)
    reset_settings()
    reset_catalog()
    yield
    reset_settings()
    reset_catalog()
