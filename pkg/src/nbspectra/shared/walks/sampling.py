"""
Rejection sampler for normal members of C.

Proposals are built vertex by vertex in normal order (previous labels plus one
fresh label) under the walk constraints, with a bias toward re-crossing edges
seen exactly once. The output covers C_0 but is not uniform on it.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..errors import ValidationError
from .paths import Walk, WalkMode, WalkPair, WalkPath, in_c

logger = logging.getLogger(__name__)

RETRACE_BIAS = 0.5
MAX_ATTEMPTS_FACTOR = 10_000


@dataclass
class PathSample:
    paths: List[Walk] = field(default_factory=list)
    attempts: int = 0

    @property
    def acceptance_rate(self) -> float:
        return len(self.paths) / self.attempts if self.attempts else 0.0


def _edge(a: int, b: int, directed: bool):
    return (a, b) if directed else (min(a, b), max(a, b))


def _choose(
    cur: int,
    options: Sequence[int],
    counts: Counter,
    directed: bool,
    rng: np.random.Generator,
    bias: float,
) -> int:
    retrace = [v for v in options if counts[_edge(cur, v, directed)] == 1]
    if retrace and rng.random() < bias:
        return int(retrace[rng.integers(len(retrace))])
    return int(options[rng.integers(len(options))])


def _propose_hermitian(
    n: int, ell: int, rng: np.random.Generator, bias: float
) -> Optional[WalkPath]:
    length = 2 * ell
    path = [1]
    used = 1
    counts: Counter = Counter()
    for pos in range(1, length + 1):
        if pos == length:
            options = [path[0]]
        elif pos == ell + 1:
            options = [path[ell - 1]]
        else:
            options = list(range(1, min(used + 1, n) + 1))
        prev = pos - 1
        if 1 <= prev <= length - 1 and prev != ell:
            options = [v for v in options if v != path[pos - 2]]
        if not options:
            return None
        v = _choose(path[-1], options, counts, False, rng, bias)
        counts[_edge(path[-1], v, False)] += 1
        path.append(v)
        used = max(used, v)
    return WalkPath(tuple(path))


def _propose_pair(
    n: int, ell: int, rng: np.random.Generator, bias: float
) -> Optional[WalkPair]:
    first = [1]
    used = 1
    counts: Counter = Counter()
    for _ in range(ell):
        v = _choose(first[-1], range(1, min(used + 1, n) + 1), counts, True, rng, bias)
        counts[_edge(first[-1], v, True)] += 1
        first.append(v)
        used = max(used, v)
    second = [1]
    for pos in range(1, ell + 1):
        if pos == ell:
            options: Sequence[int] = [first[-1]]
        else:
            options = range(1, min(used + 1, n) + 1)
        v = _choose(second[-1], options, counts, True, rng, bias)
        counts[_edge(second[-1], v, True)] += 1
        second.append(v)
        used = max(used, v)
    return WalkPair(tuple(first), tuple(second))


def sample_c0_paths(
    n: int,
    ell: int,
    count: int,
    rng: np.random.Generator,
    mode: WalkMode = WalkMode.HERMITIAN,
    bias: float = RETRACE_BIAS,
    max_attempts: Optional[int] = None,
) -> PathSample:
    """Draw `count` normal paths of C over [n] by rejection.

    Stops early (with fewer paths) after `max_attempts` proposals.
    """
    mode = WalkMode(mode)
    if n < 1 or ell < 1 or count < 0:
        raise ValidationError("need n >= 1, l >= 1 and count >= 0", field="ell")
    if not 0 <= bias <= 1:
        raise ValidationError("bias must lie in [0, 1]", field="bias")
    max_attempts = max_attempts or MAX_ATTEMPTS_FACTOR * max(count, 1)
    propose = _propose_hermitian if mode is WalkMode.HERMITIAN else _propose_pair
    sample = PathSample()
    while len(sample.paths) < count and sample.attempts < max_attempts:
        sample.attempts += 1
        candidate = propose(n, ell, rng, bias)
        if candidate is not None and in_c(candidate):
            sample.paths.append(candidate)
    if len(sample.paths) < count:
        logger.warning(
            f"Rejection sampler stopped at {len(sample.paths)}/{count} paths "
            f"after {sample.attempts} attempts"
        )
    logger.info(
        f"Sampled {len(sample.paths)} paths (n={n}, l={ell}, {mode.value}), "
        f"acceptance {sample.acceptance_rate:.3%}"
    )
    return sample
