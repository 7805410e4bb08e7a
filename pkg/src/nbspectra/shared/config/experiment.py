"""
Experiment configuration files.

Two surface formats feed the same validation:

    # flat .conf
    experiment = tail-rho-b
    n = 200, 400
    epsilon = 0.1, 0.3, 0.5

and the equivalent YAML mapping. Every error carries the 1-based line of the
offending key. Grid keys combine as a cross product unless `grid = paired`,
which zips n with d.
"""
import logging
import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import yaml

from ..errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_T = (0.25, 0.5, 1.0)
DEFAULT_GRID_POINTS = 8
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


class ExperimentKind(str, Enum):
    TAIL = "tail-rho-b"
    NORM_CURVE = "norm-curve"
    CROSSOVER = "crossover"
    CONCENTRATION = "concentration"
    DIRECTED_OUTLIER = "directed-outlier"
    MOMENT_ENVELOPE = "moment-envelope"


class GridMode(str, Enum):
    PRODUCT = "product"
    PAIRED = "paired"


# Grid keys each experiment cannot run without
REQUIRED_KEYS: Dict[ExperimentKind, Tuple[str, ...]] = {
    ExperimentKind.TAIL: ("n", "d", "epsilon"),
    ExperimentKind.NORM_CURVE: ("n", "d"),
    ExperimentKind.CROSSOVER: ("n",),
    ExperimentKind.CONCENTRATION: ("n", "d"),
    ExperimentKind.DIRECTED_OUTLIER: ("n", "d", "epsilon"),
    ExperimentKind.MOMENT_ENVELOPE: ("n", "d", "ell"),
}

DEFAULT_ENSEMBLE: Dict[ExperimentKind, str] = {
    ExperimentKind.DIRECTED_OUTLIER: "directed-er",
    ExperimentKind.MOMENT_ENVELOPE: "rademacher",
}

ALLOWED_ENSEMBLES: Dict[ExperimentKind, Tuple[str, ...]] = {
    ExperimentKind.TAIL: ("hermitian-er", "sbm"),
    ExperimentKind.NORM_CURVE: ("hermitian-er", "sbm"),
    ExperimentKind.CROSSOVER: ("hermitian-er",),
    ExperimentKind.CONCENTRATION: ("hermitian-er", "sbm"),
    ExperimentKind.DIRECTED_OUTLIER: ("directed-er",),
    ExperimentKind.MOMENT_ENVELOPE: ("rademacher",),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One validated experiment run.

    For sbm ensembles `block_probs` holds absolute edge probabilities, `n`
    defaults to the total block size and `d` stays empty.
    """

    experiment: ExperimentKind
    ensemble: str = "hermitian-er"
    n: Tuple[int, ...] = ()
    d: Tuple[float, ...] = ()
    d_log_multiples: Tuple[float, ...] = ()
    d_grid_points: Optional[int] = None
    grid: GridMode = GridMode.PRODUCT
    epsilon: Tuple[float, ...] = ()
    ell: Tuple[int, ...] = ()
    t: Tuple[float, ...] = DEFAULT_T
    trials: int = 10
    master_seed: int = 0
    output: Optional[str] = None
    threads: Optional[int] = None
    tol: Optional[float] = None
    timing: bool = False
    blocks: Tuple[int, ...] = ()
    block_probs: Tuple[Tuple[float, ...], ...] = ()
    name: Optional[str] = None

    def d_values(self, n: int) -> Tuple[float, ...]:
        """Degree grid at size n.

        Explicit `d` wins, then `d_log_multiples` (d = m log n); crossover
        falls back to a geometric grid over [1, 10 log n]. A paired grid gives
        the single d listed at the position of n.
        """
        if self.grid is GridMode.PAIRED:
            return (self.d[self.n.index(n)],)
        if self.d:
            return self.d
        log_n = math.log(n)
        if self.d_log_multiples:
            return tuple(m * log_n for m in self.d_log_multiples)
        points = self.d_grid_points or DEFAULT_GRID_POINTS
        if points == 1:
            return (10 * log_n,)
        ratio = (10 * log_n) ** (1.0 / (points - 1))
        return tuple(ratio**i for i in range(points))

    def build_ensemble(self, n: int, d: Optional[float] = None):
        """EnsembleSpec at one grid point.

        Rademacher ensembles are built per trial on a sampled support, so this
        covers the ER and SBM kinds only.
        """
        from ..ensembles import EnsembleSpec

        if self.ensemble == "sbm":
            return EnsembleSpec.sbm(self.blocks, self.block_probs)
        if d is None:
            raise ConfigError(f"{self.experiment.value} needs a degree at n={n}")
        return EnsembleSpec.erdos_renyi(n, d, directed=self.ensemble == "directed-er")

    def with_overrides(self, **overrides: Any) -> "ExperimentConfig":
        """Copy with CLI overrides applied; None values are ignored."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if "trials" in changes and changes["trials"] < 1:
            raise ConfigError("trials must be >= 1")
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        result = {f.name: getattr(self, f.name) for f in fields(self)}
        result["experiment"] = self.experiment.value
        result["grid"] = self.grid.value
        return result


def _bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def _items(raw: Any) -> List[Any]:
    if isinstance(raw, (list, tuple)):
        return list(raw)
    if isinstance(raw, str):
        parts = [p.strip() for p in raw.split(",")]
        return [p for p in parts if p]
    return [raw]


def _int(raw: Any) -> int:
    if isinstance(raw, bool):
        raise ValueError(f"expected an integer, got {raw!r}")
    if isinstance(raw, float):
        if not raw.is_integer():
            raise ValueError(f"expected an integer, got {raw!r}")
        return int(raw)
    return int(raw)


def _float(raw: Any) -> float:
    if isinstance(raw, bool):
        raise ValueError(f"expected a number, got {raw!r}")
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError(f"expected a finite number, got {raw!r}")
    return value


def _list_of(convert: Callable[[Any], Any]) -> Callable[[Any], Tuple[Any, ...]]:
    def parse(raw: Any) -> Tuple[Any, ...]:
        values = tuple(convert(item) for item in _items(raw))
        if not values:
            raise ValueError("empty list")
        return values

    return parse


def _matrix(raw: Any) -> Tuple[Tuple[float, ...], ...]:
    if isinstance(raw, str):
        rows = [row for row in raw.split(";") if row.strip()]
    else:
        rows = list(raw)
    matrix = tuple(_list_of(_float)(row) for row in rows)
    if not matrix:
        raise ValueError("empty matrix")
    return matrix


def _text(raw: Any) -> str:
    value = str(raw).strip()
    if not value:
        raise ValueError("empty value")
    return value


def _bool_value(raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    return _bool(str(raw))


_PARSERS: Dict[str, Callable[[Any], Any]] = {
    "experiment": lambda raw: ExperimentKind(_text(raw)),
    "ensemble": _text,
    "n": _list_of(_int),
    "d": _list_of(_float),
    "d_log_multiples": _list_of(_float),
    "d_grid_points": _int,
    "grid": lambda raw: GridMode(_text(raw)),
    "epsilon": _list_of(_float),
    "ell": _list_of(_int),
    "t": _list_of(_float),
    "trials": _int,
    "master_seed": _int,
    "output": _text,
    "threads": _int,
    "tol": _float,
    "timing": _bool_value,
    "blocks": _list_of(_int),
    "block_probs": _matrix,
    "name": _text,
}

_ALIASES = {"seed": "master_seed"}


def _convert(key: str, raw: Any, line: Optional[int]) -> Any:
    parser = _PARSERS.get(key)
    if parser is None:
        raise ConfigError(f"unknown key '{key}'", line=line)
    try:
        return parser(raw)
    except ConfigError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad value for '{key}': {e}", line=line)


def _validate(values: Dict[str, Any], lines: Dict[str, int]) -> ExperimentConfig:
    if "experiment" not in values:
        raise ConfigError("missing experiment", line=None)
    kind: ExperimentKind = values["experiment"]

    def fail(message: str, key: str) -> ConfigError:
        return ConfigError(message, line=lines.get(key))

    values.setdefault("ensemble", DEFAULT_ENSEMBLE.get(kind, "hermitian-er"))
    ensemble = values["ensemble"]
    if ensemble not in ALLOWED_ENSEMBLES[kind]:
        raise fail(
            f"{kind.value} runs on {', '.join(ALLOWED_ENSEMBLES[kind])}, "
            f"got '{ensemble}'",
            "ensemble",
        )

    if ensemble == "sbm":
        if "blocks" not in values or "block_probs" not in values:
            raise fail("sbm ensembles need blocks and block_probs", "ensemble")
        values.setdefault("n", (sum(values["blocks"]),))
        if values["n"] != (sum(values["blocks"]),):
            raise fail("n must equal the total block size for sbm", "n")
        if "d" in values:
            raise fail("sbm ensembles take their degree from block_probs", "d")
        required = tuple(k for k in REQUIRED_KEYS[kind] if k != "d")
    else:
        required = REQUIRED_KEYS[kind]

    for key in required:
        if key not in values:
            raise fail(f"{kind.value} needs '{key}'", "experiment")

    if values.get("grid") is GridMode.PAIRED:
        if "d" not in values:
            raise fail("a paired grid needs explicit d values", "grid")
        if len(values["n"]) != len(values["d"]):
            raise fail("a paired grid needs as many d values as n values", "d")
        if len(set(values["n"])) != len(values["n"]):
            raise fail("a paired grid needs distinct n values", "n")

    checks = [
        ("trials", lambda v: v >= 1, "trials must be >= 1"),
        ("n", lambda v: min(v) >= 2, "n values must be >= 2"),
        ("d", lambda v: min(v) > 0, "d values must be positive"),
        ("d_log_multiples", lambda v: min(v) > 0, "d_log_multiples must be positive"),
        ("d_grid_points", lambda v: v >= 1, "d_grid_points must be >= 1"),
        ("epsilon", lambda v: min(v) >= 0, "epsilon values must be >= 0"),
        ("ell", lambda v: min(v) >= 1, "ell values must be >= 1"),
        ("t", lambda v: min(v) >= 0, "t values must be >= 0"),
        ("master_seed", lambda v: 0 <= v < 2**64, "master_seed must fit in 64 bits"),
        ("threads", lambda v: v >= 1, "threads must be >= 1"),
        ("tol", lambda v: v > 0, "tol must be positive"),
        ("blocks", lambda v: min(v) >= 1, "block sizes must be >= 1"),
    ]
    for key, ok, message in checks:
        if key in values and not ok(values[key]):
            raise fail(message, key)

    probs = values.get("block_probs")
    if probs is not None:
        k = len(values.get("blocks", ()))
        if len(probs) != k or any(len(row) != k for row in probs):
            raise fail(f"block_probs must be {k}x{k}", "block_probs")
        if any(not 0 <= p <= 1 for row in probs for p in row):
            raise fail("block probabilities must lie in [0, 1]", "block_probs")
        if any(probs[i][j] != probs[j][i] for i in range(k) for j in range(k)):
            raise fail("block_probs must be symmetric", "block_probs")

    return ExperimentConfig(**values)


def parse_config(text: str, name: Optional[str] = None) -> ExperimentConfig:
    """Parse the flat `key = value` format.

    Raises:
        ConfigError: unknown, duplicate or malformed keys, missing experiment,
            invalid grid values
    """
    values: Dict[str, Any] = {}
    lines: Dict[str, int] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", line=lineno)
        key, raw = (part.strip() for part in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key in lines:
            raise ConfigError(
                f"duplicate key '{key}' (first set on line {lines[key]})", line=lineno
            )
        values[key] = _convert(key, raw, lineno)
        lines[key] = lineno
    if name is not None:
        values.setdefault("name", name)
    return _validate(values, lines)


def parse_yaml_config(text: str, name: Optional[str] = None) -> ExperimentConfig:
    """Parse the YAML mapping form; duplicate keys are rejected."""
    try:
        node = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigError(f"invalid YAML: {e}", line=mark.line + 1 if mark else None)
    if node is None or data is None:
        raise ConfigError("missing experiment", line=None)
    if not isinstance(node, yaml.MappingNode) or not isinstance(data, dict):
        raise ConfigError("config must be a mapping", line=node.start_mark.line + 1)

    lines: Dict[str, int] = {}
    for key_node, _ in node.value:
        key = _ALIASES.get(str(key_node.value), str(key_node.value))
        lineno = key_node.start_mark.line + 1
        if key in lines:
            raise ConfigError(
                f"duplicate key '{key}' (first set on line {lines[key]})", line=lineno
            )
        lines[key] = lineno

    values: Dict[str, Any] = {}
    for raw_key, raw in data.items():
        key = _ALIASES.get(str(raw_key), str(raw_key))
        if raw is None:
            raise ConfigError(
                f"bad value for '{key}': empty value", line=lines.get(key)
            )
        values[key] = _convert(key, raw, lines.get(key))
    if name is not None:
        values.setdefault("name", name)
    return _validate(values, lines)


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read a `.conf` or `.yaml` experiment config from disk.

    Raises:
        ConfigError: unreadable file, unsupported suffix or invalid content
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    suffix = path.suffix.lower()
    if suffix in (".yaml", ".yml"):
        config = parse_yaml_config(text, name=path.stem)
    elif suffix in (".conf", ".cfg", ".txt", ""):
        config = parse_config(text, name=path.stem)
    else:
        raise ConfigError(f"unsupported config format '{suffix}'")
    logger.info(f"Loaded {config.experiment.value} config from {path}")
    return config
