"""
EnsembleSpec - distributional description of a random matrix family.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ValidationError
from ..models import (
    EnsembleParams,
    ProbabilityProfile,
    build_sbm_profile,
    check_probabilities,
    derive_er_parameters,
    variance_parameters,
)

logger = logging.getLogger(__name__)

Q2_DENOMINATOR = 10**9


class EnsembleKind(str, Enum):
    HERMITIAN_ER = "hermitian-er"
    DIRECTED_ER = "directed-er"
    SBM = "sbm"
    RADEMACHER = "rademacher"
    CUSTOM_PROFILE = "custom-profile"

    @property
    def hermitian(self) -> bool:
        return self is not EnsembleKind.DIRECTED_ER

    @property
    def graph(self) -> bool:
        return self in (
            EnsembleKind.HERMITIAN_ER,
            EnsembleKind.DIRECTED_ER,
            EnsembleKind.SBM,
        )


def normalize_support(
    n: int, support: Iterable[Sequence[int]]
) -> List[Tuple[int, int]]:
    """Unordered pairs as sorted (i, j) with i < j, deduplicated."""
    pairs = set()
    for pair in support:
        i, j = int(pair[0]), int(pair[1])
        if i == j:
            raise ValidationError(
                f"support contains diagonal pair ({i}, {j})", field="support"
            )
        if not (0 <= i < n and 0 <= j < n):
            raise ValidationError(
                f"support pair ({i}, {j}) outside [0, {n})", field="support"
            )
        pairs.add((min(i, j), max(i, j)))
    return sorted(pairs)


def rational_q2(q: float) -> Fraction:
    """q^2 as a rational, exact for q = sqrt(k) with small integer k."""
    return Fraction(q * q).limit_denominator(Q2_DENOMINATOR)


@dataclass(frozen=True, eq=False)
class EnsembleSpec:
    """One random-matrix family.

    `profile` holds edge probabilities for graph kinds and the variance profile
    for the rademacher and custom-profile kinds.
    """

    kind: EnsembleKind
    n: int
    params: EnsembleParams
    profile: ProbabilityProfile
    support: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    finite_support: bool = True
    q2: Optional[Fraction] = None

    @classmethod
    def erdos_renyi(cls, n: int, d: float, directed: bool = False) -> "EnsembleSpec":
        """Homogeneous G(n, d/n) with p capped at 1."""
        if n < 2:
            raise ValidationError("n must be at least 2", field="n")
        p = min(d / n, 1.0)
        return cls.from_profile(ProbabilityProfile.homogeneous(n, p), directed=directed)

    @classmethod
    def from_profile(
        cls, P: ProbabilityProfile, directed: bool = False
    ) -> "EnsembleSpec":
        problems = check_probabilities(P)
        if problems:
            raise ValidationError(
                f"invalid profile: {', '.join(problems)}", field="profile"
            )
        if not directed and not P.symmetric:
            raise ValidationError(
                "hermitian ensembles need a symmetric profile", field="profile"
            )
        kind = EnsembleKind.DIRECTED_ER if directed else EnsembleKind.HERMITIAN_ER
        return cls(kind=kind, n=P.n, params=derive_er_parameters(P), profile=P)

    @classmethod
    def sbm(
        cls, block_sizes: Sequence[int], B: Sequence[Sequence[float]]
    ) -> "EnsembleSpec":
        P = build_sbm_profile(block_sizes, B)
        return cls(
            kind=EnsembleKind.SBM, n=P.n, params=derive_er_parameters(P), profile=P
        )

    @classmethod
    def rademacher(
        cls, n: int, q: float, support: Iterable[Sequence[int]]
    ) -> "EnsembleSpec":
        """Entries +-1/q with equal probability on a fixed symmetric support."""
        if q <= 0:
            raise ValidationError("q must be positive", field="q")
        pairs = normalize_support(n, support)
        S = np.zeros((n, n))
        for i, j in pairs:
            S[i, j] = S[j, i] = 1.0 / (q * q)
        profile = ProbabilityProfile(n=n, dense=S)
        return cls(
            kind=EnsembleKind.RADEMACHER,
            n=n,
            params=variance_parameters(profile, q),
            profile=profile,
            support=tuple(pairs),
            q2=rational_q2(q),
        )

    @classmethod
    def custom(cls, S: np.ndarray, q: float) -> "EnsembleSpec":
        """Three-point law on a variance profile S (needs S_ij q^2 <= 1)."""
        profile = ProbabilityProfile.from_dense(S)
        if not profile.symmetric:
            raise ValidationError("variance profile must be symmetric", field="profile")
        if profile.dense.min() < 0:
            raise ValidationError("variances must be non-negative", field="profile")
        if profile.max_entry() * q * q > 1 + 1e-12:
            raise ValidationError(
                "variance profile needs S_ij * q^2 <= 1 for the three-point law",
                field="profile",
            )
        rows, cols = np.nonzero(np.triu(profile.dense, k=1))
        return cls(
            kind=EnsembleKind.CUSTOM_PROFILE,
            n=profile.n,
            params=variance_parameters(profile, q),
            profile=profile,
            support=tuple(zip(rows.tolist(), cols.tolist())),
            q2=rational_q2(q),
        )

    @property
    def hermitian(self) -> bool:
        return self.kind.hermitian

    @property
    def directed(self) -> bool:
        return not self.kind.hermitian

    def variance_profile(self) -> ProbabilityProfile:
        """Entry variances E|H_ij|^2."""
        if self.kind.graph:
            return self.profile.variance_profile(self.params.d)
        return self.profile

    def describe(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "d": self.params.d,
            "kappa": self.params.kappa,
            "q": self.params.q,
            "q_raw": self.params.q_raw,
            "finite_support": self.finite_support,
            "support_size": len(self.support) if self.support else None,
        }

    def __repr__(self) -> str:
        return (
            f"EnsembleSpec(kind={self.kind.value}, n={self.n}, "
            f"d={self.params.d:.4g}, q={self.params.q:.4g})"
        )
