"""
Experiments feature - Business logic handler
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from ...shared.config import get_catalog
from ...shared.harness import RunOutcome, run_catalog_entry, run_config_file

logger = logging.getLogger(__name__)


class ExperimentsHandler:
    """Lists and runs experiment configs"""

    def list(self) -> List[Dict[str, Any]]:
        return get_catalog().list()

    def run(
        self,
        config: str,
        output: Optional[str] = None,
        threads: Optional[int] = None,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        tol: Optional[float] = None,
        record_golden: bool = False,
    ) -> RunOutcome:
        """
        Run a shipped config by name, or a config file by path

        Args:
            config: catalog name or path to a .conf / .yaml file
            output: CSV path (defaults to the config's output or the data dir)
            threads: worker threads
            trials, seed, tol: overrides of the config values
            record_golden: write the golden of a shipped config when it is missing

        Returns:
            RunOutcome with the records and the golden comparison
        """
        overrides = {"trials": trials, "master_seed": seed, "tol": tol}
        if Path(config).suffix and Path(config).exists():
            outcome = run_config_file(config, output, threads, **overrides)
        else:
            outcome = run_catalog_entry(
                config, output, threads, record_golden, **overrides
            )
        logger.info(f"Experiment {config} wrote {outcome.output}")
        return outcome
