"""Reference quantities and fitted constants reported by the experiments."""
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.stats import binomtest

from ..errors import ValidationError

WILSON_LEVEL = 0.95


def wilson_interval(
    successes: int, trials: int, level: float = WILSON_LEVEL
) -> Tuple[float, float]:
    """Wilson score interval for a binomial frequency."""
    if trials < 1:
        raise ValidationError("need at least one trial", field="trials")
    test = binomtest(successes, trials)
    ci = test.proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


def bennett_h(t: float) -> float:
    """h(t) = (1 + t) log(1 + t) - t."""
    if t < -1:
        raise ValidationError("h is defined for t >= -1", field="t")
    if t == -1:
        return 1.0
    return (1 + t) * math.log1p(t) - t


def eta(n: int, q: float) -> float:
    """sqrt(log n) / q."""
    return math.sqrt(math.log(n)) / q


def tail_exponent(
    frequency_bound: float, n: int, q: float, epsilon: float, power: float = 3.0
) -> Optional[float]:
    """c solving frequency_bound = n^(power - c q log(1 + epsilon)) with C = 1.

    None when epsilon = 0 or the bound is not in (0, 1].
    """
    if epsilon <= 0 or not 0 < frequency_bound <= 1:
        return None
    return (power - math.log(frequency_bound) / math.log(n)) / (q * math.log1p(epsilon))


def norm_constant(mean_norm: float, eta_value: float) -> float:
    """C in E||H|| <= 2 + C eta / sqrt(1 v log eta).

    Negative when the mean is below 2.
    """
    return (mean_norm - 2) * math.sqrt(max(1.0, math.log(eta_value))) / eta_value


def refined_constant(mean_norm: float, mean_row_norm: float, q: float) -> float:
    """C in E||H|| <= E||H||_{2->inf} (2 + C/q)."""
    return q * (mean_norm / mean_row_norm - 2)


def small_degree_applies(n: int, d: float, max_p: float) -> bool:
    return d >= 4 and d**5 * max_p <= n ** (-1.0 / 13.0)


def small_degree_constant(mean_norm: float, n: int, d: float) -> float:
    """C in ||A - EA|| <= 2 sqrt(d) + C sqrt(log n / (1 v log(log n / d)))."""
    log_n = math.log(n)
    scale = math.sqrt(log_n / max(1.0, math.log(log_n / d)))
    return (math.sqrt(d) * mean_norm - 2 * math.sqrt(d)) / scale


def sparse_reference(eta_value: float) -> Optional[float]:
    """eta / sqrt(2 log eta), the very sparse scale of ||H||; None for eta <= 1."""
    if eta_value <= 1:
        return None
    return eta_value / math.sqrt(2 * math.log(eta_value))


def is_non_increasing(values: Sequence[float], tol: float = 0.0) -> bool:
    return all(b <= a + tol for a, b in zip(values, values[1:]))


def quartiles(values: Sequence[float]) -> Tuple[float, float, float]:
    q25, q50, q75 = np.quantile(np.asarray(values, dtype=float), [0.25, 0.5, 0.75])
    return float(q25), float(q50), float(q75)


def sample_std(values: Sequence[float]) -> float:
    """Unbiased standard deviation; 0 for a single value."""
    if len(values) < 2:
        return 0.0
    return float(np.std(np.asarray(values, dtype=float), ddof=1))
