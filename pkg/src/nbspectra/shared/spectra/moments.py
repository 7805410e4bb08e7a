"""
Trace moments tr B^l B^{*l} of one realization.

The trace runs over all n^2 pairs. Columns of B indexed off the support are
zero, so it equals sum over support edges f of |B^l delta_f|^2 taken over all
n^2 rows, which full_rows_sq_norm evaluates from the support-restricted
iterate B^(l-1) delta_f.
"""
import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ..errors import SizeGuardError, ValidationError
from ..nbop import NbOperator, build_nb_operator, full_rows_sq_norm, nb_apply
from .config import SpectralConfig

logger = logging.getLogger(__name__)

EXACT_MAX_EDGES = 2048
COLUMN_CHUNK = 256


class TraceMode(str, Enum):
    EXACT = "exact-small"
    STOCHASTIC = "stochastic"


@dataclass
class TraceMoment:
    value: float
    stderr: float
    mode: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _power(op: NbOperator, X: np.ndarray, times: int) -> np.ndarray:
    for _ in range(times):
        X = nb_apply(op, X)
    return X


def trace_moment(
    op: NbOperator,
    ell: int,
    mode: TraceMode = TraceMode.EXACT,
    cfg: Optional[SpectralConfig] = None,
) -> TraceMoment:
    """tr B^l B^{*l} by exact column accumulation or random sign vectors.

    Raises:
        ValidationError: ell < 1
        SizeGuardError: exact mode with more than 2048 support edges
    """
    mode = TraceMode(mode)
    if ell < 1:
        raise ValidationError("ell must be >= 1", field="ell")
    if op.mode.value != "support-restricted":
        op = build_nb_operator(op.H)
    m = op.m
    if m == 0:
        return TraceMoment(value=0.0, stderr=0.0, mode=mode.value)

    if mode is TraceMode.EXACT:
        if m > EXACT_MAX_EDGES:
            raise SizeGuardError(
                f"exact trace needs m <= {EXACT_MAX_EDGES}, got {m}",
                limit=EXACT_MAX_EDGES,
                actual=m,
                field="m",
            )
        total = 0.0
        for start in range(0, m, COLUMN_CHUNK):
            stop = min(start + COLUMN_CHUNK, m)
            X = np.zeros((m, stop - start))
            X[np.arange(start, stop), np.arange(stop - start)] = 1.0
            X = _power(op, X, ell - 1)
            total += float(np.sum(full_rows_sq_norm(op, X)))
        return TraceMoment(value=total, stderr=0.0, mode=mode.value)

    cfg = cfg or SpectralConfig()
    rng = cfg.seed.rng()
    Z = rng.integers(0, 2, size=(m, cfg.sign_vectors)).astype(float) * 2 - 1
    samples = np.asarray(full_rows_sq_norm(op, _power(op, Z, ell - 1)))
    value = float(samples.mean())
    stderr = float(samples.std(ddof=1) / math.sqrt(cfg.sign_vectors))
    logger.debug(f"Stochastic trace l={ell}: {value:.6g} +- {stderr:.2g}")
    return TraceMoment(value=value, stderr=stderr, mode=mode.value)


def gelfand_bound(moment: TraceMoment, ell: int) -> float:
    """(tr B^l B^{*l})^(1/(2l)), an upper bound on rho(B)."""
    return max(moment.value, 0.0) ** (1.0 / (2 * ell))
