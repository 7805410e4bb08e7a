"""
TrialRecord rows and their CSV form.

One row per statistic. Per-trial rows carry trial >= 0; aggregate rows over a
grid point use trial = -1. Empty cells stand for "not applicable" (for
example epsilon outside the tail and outlier experiments). Floats are written
with repr, so a written file reads back to identical values.
"""
import csv
import logging
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Optional, TextIO, Union

from ..errors import ValidationError

logger = logging.getLogger(__name__)

AGGREGATE_TRIAL = -1


@dataclass(frozen=True)
class TrialRecord:
    experiment: str
    n: Optional[int]
    d: Optional[float]
    q: Optional[float]
    kappa: Optional[float]
    epsilon: Optional[float]
    trial: int
    seed: int
    stat_name: str
    stat_value: float
    runtime_ms: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.stat_value):
            raise ValidationError(
                f"statistic {self.stat_name} is not finite: {self.stat_value}",
                field="stat_value",
            )


COLUMNS = [f.name for f in fields(TrialRecord)]
_INT_COLUMNS = {"n", "trial", "seed"}
_FLOAT_COLUMNS = {"d", "q", "kappa", "epsilon", "stat_value", "runtime_ms"}


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse(column: str, raw: str) -> object:
    if raw == "":
        return None
    if column in _INT_COLUMNS:
        return int(raw)
    if column in _FLOAT_COLUMNS:
        return float(raw)
    return raw


def write_records(records: Iterable[TrialRecord], stream: TextIO) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    count = 0
    for record in records:
        writer.writerow([_cell(v) for v in astuple(record)])
        count += 1
    return count


def write_results(records: Iterable[TrialRecord], path: Union[str, Path]) -> Path:
    """Write records to `path` (parent directories are created)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        count = write_records(records, f)
    logger.info(f"Wrote {count} records to {path}")
    return path


def read_results(path: Union[str, Path]) -> List[TrialRecord]:
    """Records from a CSV written by write_results.

    Raises:
        ValidationError: header does not match the record columns
    """
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != COLUMNS:
            raise ValidationError(
                f"unexpected CSV header {header}, expected {COLUMNS}", field="path"
            )
        records = []
        for row in reader:
            values = {c: _parse(c, raw) for c, raw in zip(COLUMNS, row)}
            records.append(TrialRecord(**values))  # type: ignore[arg-type]
    return records
