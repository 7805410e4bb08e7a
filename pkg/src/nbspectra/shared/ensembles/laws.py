"""
Finite-support entry laws and exhaustive realization enumeration.

Used by the exact trace-moment oracles. Rademacher and three-point laws are
kept in exact arithmetic: values are sign * s with s^2 = scale2 rational.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple, Union

import numpy as np

from ..errors import SizeGuardError
from .spec import EnsembleKind, EnsembleSpec

logger = logging.getLogger(__name__)

REALIZATION_LIMIT = 10**7
PROB_DENOMINATOR = 10**12

Number = Union[Fraction, float]
Key = Tuple[int, int]


@dataclass(frozen=True)
class EntryLaw:
    """Distribution of one independent entry H_ij."""

    values: Tuple[complex, ...]
    probs: Tuple[Number, ...]
    scale2: Optional[Fraction] = None
    signs: Optional[Tuple[int, ...]] = None

    @property
    def exact(self) -> bool:
        return (
            self.scale2 is not None
            and self.signs is not None
            and all(isinstance(p, Fraction) for p in self.probs)
        )

    def moment(self, a: int, b: int) -> Number:
        """E[v^a conj(v)^b]."""
        if a == 0 and b == 0:
            return Fraction(1) if self.exact else 1.0
        if self.exact:
            order = a + b
            mass = sum(
                (p * (s**order) for p, s in zip(self.probs, self.signs) if s != 0),
                Fraction(0),
            )
            if mass == 0:
                return Fraction(0)
            if order % 2 == 0:
                return mass * self.scale2 ** (order // 2)
            return float(mass) * math.sqrt(self.scale2) ** order
        total = complex(
            sum(
                float(p) * v**a * np.conj(v) ** b
                for p, v in zip(self.probs, self.values)
            )
        )
        return total.real if total.imag == 0 else total

    @property
    def mean(self) -> Number:
        return self.moment(1, 0)


def _fraction(x: float) -> Fraction:
    return Fraction(x).limit_denominator(PROB_DENOMINATOR)


def rademacher_law(q2: Fraction) -> EntryLaw:
    s = 1.0 / math.sqrt(q2)
    return EntryLaw(
        values=(s, -s),
        probs=(Fraction(1, 2), Fraction(1, 2)),
        scale2=1 / q2,
        signs=(1, -1),
    )


def three_point_law(variance: float, q2: Fraction) -> EntryLaw:
    s = 1.0 / math.sqrt(q2)
    mass = _fraction(variance) * q2
    return EntryLaw(
        values=(s, -s, 0.0),
        probs=(mass / 2, mass / 2, 1 - mass),
        scale2=1 / q2,
        signs=(1, -1, 0),
    )


def bernoulli_centered_law(p: float, d: float) -> EntryLaw:
    scale = 1.0 / math.sqrt(d)
    return EntryLaw(values=((1.0 - p) * scale, -p * scale), probs=(p, 1.0 - p))


def entry_laws(spec: EnsembleSpec) -> Dict[Key, EntryLaw]:
    """Law of every independent entry.

    Keys are (i, j) with i < j for Hermitian ensembles (H_ji = conj(H_ij)) and all
    ordered pairs i != j for directed ones. Pairs whose entry is identically 0
    are omitted.
    """
    laws: Dict[Key, EntryLaw] = {}
    if spec.kind is EnsembleKind.RADEMACHER:
        law = rademacher_law(spec.q2)
        for pair in spec.support:
            laws[tuple(pair)] = law
        return laws
    if spec.kind is EnsembleKind.CUSTOM_PROFILE:
        for i, j in spec.support:
            laws[(i, j)] = three_point_law(spec.profile.entry(i, j), spec.q2)
        return laws
    n = spec.n
    d = spec.params.d
    for i in range(n):
        for j in range(n):
            if i == j or (spec.hermitian and j < i):
                continue
            p = spec.profile.entry(i, j)
            if 0 < p < 1:
                laws[(i, j)] = bernoulli_centered_law(p, d)
    return laws


def realization_count(laws: Dict[Key, EntryLaw]) -> int:
    return math.prod(len(law.values) for law in laws.values())


def enumerate_realizations(
    spec: EnsembleSpec, limit: int = REALIZATION_LIMIT
) -> Iterator[Tuple[Dict[Key, int], Number]]:
    """Yield (choice index per key, probability) for every realization.

    Raises:
        SizeGuardError: more than `limit` realizations
    """
    laws = entry_laws(spec)
    total = realization_count(laws)
    if total > limit:
        raise SizeGuardError(
            f"{total} realizations exceed the enumeration limit {limit}",
            limit=limit,
            actual=total,
            field="support",
        )
    keys = list(laws)
    logger.debug(f"Enumerating {total} realizations over {len(keys)} entries")
    ranges = [range(len(laws[k].values)) for k in keys]
    exact = all(law.exact for law in laws.values())
    for choice in itertools.product(*ranges):
        prob: Number = Fraction(1) if exact else 1.0
        for k, c in zip(keys, choice):
            prob = prob * laws[k].probs[c]
        if prob == 0:
            continue
        yield dict(zip(keys, choice)), prob


def realization_matrix(
    n: int,
    laws: Dict[Key, EntryLaw],
    choice: Dict[Key, int],
    hermitian: bool,
    signs: bool = False,
) -> np.ndarray:
    """Dense matrix of one realization (integer signs when `signs` is set)."""
    M = np.zeros((n, n), dtype=np.int64 if signs else np.complex128)
    for (i, j), c in choice.items():
        law = laws[(i, j)]
        v = law.signs[c] if signs else law.values[c]
        M[i, j] = v
        if hermitian:
            M[j, i] = v if signs else np.conj(v)
    return M


def sample_from_laws(
    n: int, laws: Dict[Key, EntryLaw], hermitian: bool, rng: np.random.Generator
) -> np.ndarray:
    """One random realization drawn entry by entry."""
    choice = {}
    for key in sorted(laws):
        probs = np.array([float(p) for p in laws[key].probs])
        choice[key] = int(rng.choice(len(probs), p=probs / probs.sum()))
    return realization_matrix(n, laws, choice, hermitian)

