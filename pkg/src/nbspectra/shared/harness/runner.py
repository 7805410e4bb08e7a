"""Run configs end to end: load, run, write CSV, compare against goldens."""
import io
import logging
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..config.catalog import get_catalog
from ..config.experiment import ExperimentConfig, load_config
from ..config.settings import get_settings
from .experiments import ExperimentResult, run_experiment
from .records import write_records, write_results

logger = logging.getLogger(__name__)


@dataclass
class RunOutcome:
    result: ExperimentResult
    output: Path
    golden: Optional[Path] = None
    golden_match: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.golden_match is not False

    def to_dict(self) -> Dict[str, Any]:
        summary = self.result.summary()
        summary.update(
            {
                "output": str(self.output),
                "golden": str(self.golden) if self.golden else None,
                "golden_match": self.golden_match,
            }
        )
        return summary


def render_csv(result: ExperimentResult) -> str:
    buffer = io.StringIO()
    write_records(result.records, buffer)
    return buffer.getvalue()


def _output_path(cfg: ExperimentConfig, output: Optional[Union[str, Path]]) -> Path:
    if output is not None:
        return Path(output)
    if cfg.output is not None:
        return Path(cfg.output)
    stem = cfg.name or cfg.experiment.value
    return get_settings().data_dir / f"{stem}.csv"


def run_config(
    cfg: ExperimentConfig,
    output: Optional[Union[str, Path]] = None,
    threads: Optional[int] = None,
    golden: Optional[Path] = None,
    record_golden: bool = False,
) -> RunOutcome:
    """Run `cfg`, write its CSV and, when a golden exists, compare byte for byte.

    With record_golden a missing golden is written from this run; an existing
    one is still only compared.
    """
    result = run_experiment(cfg, threads)
    path = write_results(result.records, _output_path(cfg, output))
    outcome = RunOutcome(result=result, output=path)
    if golden is not None and not golden.exists() and record_golden:
        golden.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(path, golden)
        outcome.golden = golden
        logger.info(f"Recorded golden {golden} from {path}")
    elif golden is not None and golden.exists():
        outcome.golden = golden
        outcome.golden_match = path.read_bytes() == golden.read_bytes()
        if not outcome.golden_match:
            logger.warning(f"{path} differs from golden {golden}")
        else:
            logger.info(f"{path} matches golden {golden}")
    return outcome


def run_config_file(
    path: Union[str, Path],
    output: Optional[Union[str, Path]] = None,
    threads: Optional[int] = None,
    **overrides: Any,
) -> RunOutcome:
    cfg = load_config(path).with_overrides(**overrides)
    return run_config(cfg, output, threads)


def run_catalog_entry(
    name: str,
    output: Optional[Union[str, Path]] = None,
    threads: Optional[int] = None,
    record_golden: bool = False,
    **overrides: Any,
) -> RunOutcome:
    """Run a shipped config by name.

    The golden comparison, and recording, are skipped when overrides change
    the run.

    Raises:
        NotFoundError: unknown config name
    """
    entry = get_catalog().get(name)
    cfg = entry.load().with_overrides(**overrides)
    changed = any(v is not None for v in overrides.values())
    golden = None if changed else entry.golden
    return run_config(cfg, output, threads, golden, record_golden)
