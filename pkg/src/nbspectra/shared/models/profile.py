"""
Probability profiles for inhomogeneous Erdős–Rényi graphs.

A profile is either block-constant (block sizes plus a symmetric block matrix,
applied matrix-free) or an explicit dense n x n array. The diagonal is always
zero: graphs carry no self-loops.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..errors import ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ProbabilityProfile:
    """Per-pair probabilities p_ij (or variances) with zero diagonal."""

    n: int
    block_sizes: Optional[np.ndarray] = None
    block_probs: Optional[np.ndarray] = None
    dense: Optional[np.ndarray] = None
    symmetric: bool = True
    _labels: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if (self.dense is None) == (self.block_probs is None):
            raise ValidationError(
                "profile needs exactly one of a dense matrix or a block matrix",
                field="profile",
            )
        if self.dense is not None:
            dense = np.array(self.dense, dtype=float)
            if dense.shape != (self.n, self.n):
                raise ValidationError(
                    f"dense profile has shape {dense.shape}, "
                    f"expected ({self.n}, {self.n})",
                    field="profile",
                )
            np.fill_diagonal(dense, 0.0)
            dense.setflags(write=False)
            object.__setattr__(self, "dense", dense)
            object.__setattr__(self, "symmetric", bool(np.array_equal(dense, dense.T)))
            object.__setattr__(self, "_labels", np.zeros(0, dtype=np.int64))
        else:
            sizes = np.asarray(self.block_sizes, dtype=np.int64)
            probs = np.array(self.block_probs, dtype=float)
            object.__setattr__(self, "block_sizes", sizes)
            object.__setattr__(self, "block_probs", probs)
            object.__setattr__(self, "symmetric", bool(np.array_equal(probs, probs.T)))
            object.__setattr__(
                self, "_labels", np.repeat(np.arange(len(sizes)), sizes)
            )

    @classmethod
    def homogeneous(cls, n: int, p: float) -> "ProbabilityProfile":
        """Single block: p_ij = p for every i != j."""
        return cls(n=n, block_sizes=np.array([n]), block_probs=np.array([[p]]))

    @classmethod
    def from_dense(cls, P: np.ndarray) -> "ProbabilityProfile":
        P = np.asarray(P, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1]:
            raise ValidationError("profile must be a square matrix", field="profile")
        return cls(n=P.shape[0], dense=P)

    @property
    def is_block(self) -> bool:
        return self.block_probs is not None

    @property
    def labels(self) -> np.ndarray:
        """Block label of each vertex (block form only)."""
        return self._labels

    def entry(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        if self.dense is not None:
            return float(self.dense[i, j])
        return float(self.block_probs[self._labels[i], self._labels[j]])

    def row(self, i: int) -> np.ndarray:
        """Full row i (zero at position i)."""
        if self.dense is not None:
            return np.array(self.dense[i])
        out = self.block_probs[self._labels[i], self._labels].astype(float)
        out[i] = 0.0
        return out

    def row_upper(self, i: int) -> np.ndarray:
        """Entries p_ij for j > i."""
        if self.dense is not None:
            return np.array(self.dense[i, i + 1:])
        return self.block_probs[self._labels[i], self._labels[i + 1:]].astype(float)

    def values_at(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Vectorized p_ij for index arrays (diagonal pairs give 0)."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if self.dense is not None:
            out = self.dense[rows, cols].astype(float)
        else:
            out = self.block_probs[self._labels[rows], self._labels[cols]].astype(float)
        out[rows == cols] = 0.0
        return out

    def row_sums(self) -> np.ndarray:
        if self.dense is not None:
            return self.dense.sum(axis=1)
        per_block = self.block_probs @ self.block_sizes.astype(float)
        return per_block[self._labels] - np.diag(self.block_probs)[self._labels]

    def max_entry(self) -> float:
        """Largest off-diagonal entry; a block of size 1 has no internal pairs."""
        if self.n < 2:
            return 0.0
        if self.dense is not None:
            return float(self.dense.max())
        best = 0.0
        for a, size_a in enumerate(self.block_sizes):
            for b, size_b in enumerate(self.block_sizes):
                if size_a == 0 or size_b == 0 or (a == b and size_a < 2):
                    continue
                best = max(best, float(self.block_probs[a, b]))
        return best

    def to_dense(self) -> np.ndarray:
        if self.dense is not None:
            return np.array(self.dense)
        P = self.block_probs[np.ix_(self._labels, self._labels)].astype(float)
        np.fill_diagonal(P, 0.0)
        return P

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """P @ x without materializing P in block form."""
        x = np.asarray(x)
        if self.dense is not None:
            return self.dense @ x
        k = len(self.block_sizes)
        block_totals = np.zeros((k,) + x.shape[1:], dtype=np.result_type(x, float))
        np.add.at(block_totals, self._labels, x)
        out = (self.block_probs @ block_totals)[self._labels]
        diag = np.diag(self.block_probs)[self._labels]
        if x.ndim == 1:
            return out - diag * x
        return out - diag[:, None] * x

    def rmatvec(self, x: np.ndarray) -> np.ndarray:
        """P^T @ x."""
        if self.symmetric:
            return self.matvec(x)
        transposed = (
            ProbabilityProfile(n=self.n, dense=self.dense.T)
            if self.dense is not None
            else ProbabilityProfile(
                n=self.n, block_sizes=self.block_sizes, block_probs=self.block_probs.T
            )
        )
        return transposed.matvec(x)

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "ProbabilityProfile":
        """Apply an entrywise function, keeping the structure (diagonal stays 0)."""
        if self.dense is not None:
            return ProbabilityProfile(n=self.n, dense=fn(np.array(self.dense)))
        return ProbabilityProfile(
            n=self.n, block_sizes=self.block_sizes, block_probs=fn(self.block_probs)
        )

    def variance_profile(self, d: float) -> "ProbabilityProfile":
        """Entry variances p(1-p)/d of the centered, scaled adjacency matrix."""
        if d <= 0:
            raise ValidationError("d must be positive", field="d")
        return self.map(lambda p: p * (1.0 - p) / d)


def build_sbm_profile(
    block_sizes: Sequence[int], B: Sequence[Sequence[float]]
) -> ProbabilityProfile:
    """Block-constant profile p_ij = B[block(i)][block(j)] with zero diagonal."""
    sizes = np.asarray(list(block_sizes), dtype=np.int64)
    probs = np.asarray(B, dtype=float)
    if sizes.ndim != 1 or len(sizes) == 0:
        raise ValidationError("block sizes must be a non-empty list", field="blocks")
    if np.any(sizes < 0):
        raise ValidationError("block sizes must be non-negative", field="blocks")
    if probs.shape != (len(sizes), len(sizes)):
        raise ValidationError(
            f"block matrix has shape {probs.shape}, expected "
            f"({len(sizes)}, {len(sizes)})",
            field="block_probs",
        )
    if not np.allclose(probs, probs.T, rtol=0.0, atol=0.0):
        raise ValidationError("block matrix must be symmetric", field="block_probs")
    if np.any(probs < 0) or np.any(probs > 1):
        raise ValidationError(
            "block probabilities must lie in [0, 1]", field="block_probs"
        )
    n = int(sizes.sum())
    logger.debug(f"SBM profile: n={n}, blocks={sizes.tolist()}")
    return ProbabilityProfile(n=n, block_sizes=sizes, block_probs=probs)


def check_probabilities(profile: ProbabilityProfile) -> List[str]:
    """Problems with the profile read as probabilities (empty when valid)."""
    problems = []
    values = profile.dense if profile.dense is not None else profile.block_probs
    if np.any(values < 0) or np.any(values > 1):
        problems.append("entries must lie in [0, 1]")
    if not np.all(np.isfinite(values)):
        problems.append("entries must be finite")
    return problems
