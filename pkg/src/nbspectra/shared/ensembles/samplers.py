"""
Seeded samplers for the ensemble families.

ER rows are drawn as uniforms compared against p_ij, so for a fixed trial the
sampled graphs are nested as d grows (common random numbers across a d grid).
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from ..config.settings import get_settings
from ..errors import SizeGuardError, ValidationError
from ..models import ProbabilityProfile, SparseMatrix
from .seeds import SeedSpec, as_seed
from .spec import EnsembleKind, EnsembleSpec, normalize_support

logger = logging.getLogger(__name__)

SeedLike = Union[SeedSpec, int]


@dataclass(frozen=True, eq=False)
class ErSample:
    """One ER draw: adjacency A plus what is needed to center and scale it.

    H = d^(-1/2) (A - P) is materialized only for n <= dense_limit; the
    matrix-free helpers cover larger n.
    """

    A: SparseMatrix
    profile: ProbabilityProfile
    d: float
    directed: bool
    dense_limit: int

    @property
    def n(self) -> int:
        return self.A.n

    @cached_property
    def H(self) -> SparseMatrix:
        if self.n > self.dense_limit:
            raise SizeGuardError(
                f"centered H is dense; n={self.n} exceeds dense limit "
                f"{self.dense_limit}",
                limit=self.dense_limit,
                actual=self.n,
                field="n",
            )
        mean = self.profile.to_dense()
        centered = (self.A.csr.real.toarray() - mean) / math.sqrt(self.d)
        return SparseMatrix.from_dense(
            centered, hermitian=False if self.directed else None
        )

    def __iter__(self) -> Iterator[SparseMatrix]:
        yield self.A
        yield self.H

    def centered_operator(self) -> LinearOperator:
        """H as a LinearOperator: (A x - P x) / sqrt(d)."""
        A = self.A.csr.real if self.A.is_real() else self.A.csr
        AT = A.T.tocsr()
        scale = 1.0 / math.sqrt(self.d)
        profile = self.profile

        def matvec(x):
            return (A @ x - profile.matvec(x)) * scale

        def rmatvec(x):
            return (AT.conj() @ x - profile.rmatvec(x)) * scale

        return LinearOperator(
            shape=(self.n, self.n),
            matvec=matvec,
            rmatvec=rmatvec,
            matmat=matvec,
            dtype=A.dtype,
        )

    def centered_row_sq_sums(self) -> np.ndarray:
        """sum_j |H_ij|^2 = (1/d) [sum_j p_ij^2 + sum_{j in A_i} (1 - 2 p_ij)]."""
        p_sq = self.profile.map(np.square).row_sums()
        coo = self.A.csr.tocoo()
        p_edges = self.profile.values_at(coo.row, coo.col)
        edge_terms = np.bincount(coo.row, weights=1.0 - 2.0 * p_edges, minlength=self.n)
        return (p_sq + edge_terms) / self.d

    def centered_max_abs(self) -> float:
        """max_ij |H_ij| without materializing H."""
        coo = self.A.csr.tocoo()
        best = 0.0
        if coo.nnz:
            best = float(np.max(1.0 - self.profile.values_at(coo.row, coo.col)))
        best = max(best, self._max_non_edge_probability())
        return best / math.sqrt(self.d)

    def _max_non_edge_probability(self) -> float:
        coo = self.A.csr.tocoo()
        P = self.profile
        if P.is_block:
            k = len(P.block_sizes)
            labels = P.labels
            edge_counts = np.zeros((k, k), dtype=np.int64)
            np.add.at(edge_counts, (labels[coo.row], labels[coo.col]), 1)
            sizes = P.block_sizes
            pairs = np.outer(sizes, sizes) - np.diag(sizes)
            open_blocks = pairs > edge_counts
            if not open_blocks.any():
                return 0.0
            return float(P.block_probs[open_blocks].max())
        mask = np.ones((self.n, self.n), dtype=bool)
        np.fill_diagonal(mask, False)
        mask[coo.row, coo.col] = False
        if not mask.any():
            return 0.0
        return float(P.dense[mask].max())


def _check_er(spec: EnsembleSpec, directed: bool) -> None:
    if spec.params.d <= 0:
        raise ValidationError("degenerate profile", field="profile")
    if directed and spec.kind is not EnsembleKind.DIRECTED_ER:
        raise ValidationError(
            f"directed sampler needs a directed-er spec, got {spec.kind.value}",
            field="kind",
        )
    if not directed and spec.kind not in (EnsembleKind.HERMITIAN_ER, EnsembleKind.SBM):
        raise ValidationError(
            f"hermitian ER sampler needs hermitian-er or sbm, got {spec.kind.value}",
            field="kind",
        )


def sample_inhomogeneous_er(
    spec: EnsembleSpec, seed: SeedLike, dense_limit: Optional[int] = None
) -> ErSample:
    """Symmetric 0/1 adjacency with independent A_ij ~ Bernoulli(p_ij), i < j."""
    _check_er(spec, directed=False)
    rng = as_seed(seed).rng()
    n = spec.n
    rows, cols = [], []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - i - 1) < spec.profile.row_upper(i))
        if hits.size:
            rows.append(np.full(hits.size, i, dtype=np.int64))
            cols.append(hits + i + 1)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        A = sp.coo_matrix(
            (np.ones(2 * r.size), (np.concatenate([r, c]), np.concatenate([c, r]))),
            shape=(n, n),
        )
    else:
        A = sp.coo_matrix((n, n))
    logger.debug(f"Sampled hermitian ER n={n}, edges={len(r) if rows else 0}")
    return ErSample(
        A=SparseMatrix.from_scipy(A, hermitian=True),
        profile=spec.profile,
        d=spec.params.d,
        directed=False,
        dense_limit=dense_limit or get_settings().dense_limit,
    )


def sample_directed_er(
    spec: EnsembleSpec, seed: SeedLike, dense_limit: Optional[int] = None
) -> ErSample:
    """All n(n-1) ordered pairs sampled independently."""
    _check_er(spec, directed=True)
    rng = as_seed(seed).rng()
    n = spec.n
    rows, cols = [], []
    for i in range(n):
        hits = np.flatnonzero(rng.random(n) < spec.profile.row(i))
        if hits.size:
            rows.append(np.full(hits.size, i, dtype=np.int64))
            cols.append(hits)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        A = sp.coo_matrix((np.ones(r.size), (r, c)), shape=(n, n))
    else:
        A = sp.coo_matrix((n, n))
    return ErSample(
        A=SparseMatrix.from_scipy(A),
        profile=spec.profile,
        d=spec.params.d,
        directed=True,
        dense_limit=dense_limit or get_settings().dense_limit,
    )


def sample_rademacher(
    n: int, q: float, support: Iterable[Sequence[int]], seed: SeedLike
) -> SparseMatrix:
    """Hermitian H with H_ij = sigma_ij / q, independent uniform signs for i < j."""
    if q <= 0:
        raise ValidationError("q must be positive", field="q")
    pairs = normalize_support(n, support)
    if not pairs:
        return SparseMatrix.zeros(n)
    rng = as_seed(seed).rng()
    signs = rng.integers(0, 2, size=len(pairs)) * 2 - 1
    entries = [(i, j, s / q) for (i, j), s in zip(pairs, signs.tolist())]
    return SparseMatrix.from_entries(n, entries, hermitian=True)


def sample_custom_profile(spec: EnsembleSpec, seed: SeedLike) -> SparseMatrix:
    """Three-point law: +-1/q with probability S_ij q^2 / 2 each, else 0."""
    if spec.kind is not EnsembleKind.CUSTOM_PROFILE:
        raise ValidationError(
            "custom sampler needs a custom-profile spec", field="kind"
        )
    rng = as_seed(seed).rng()
    q = spec.params.q
    pairs = spec.support
    if not pairs:
        return SparseMatrix.zeros(spec.n)
    rows = np.array([p[0] for p in pairs])
    cols = np.array([p[1] for p in pairs])
    mass = spec.profile.values_at(rows, cols) * q * q
    u = rng.random(len(pairs))
    values = np.where(u < mass / 2, 1.0 / q, np.where(u < mass, -1.0 / q, 0.0))
    entries = [
        (i, j, v) for i, j, v in zip(rows.tolist(), cols.tolist(), values.tolist()) if v
    ]
    return SparseMatrix.from_entries(spec.n, entries, hermitian=True)


def sample_matrix(
    spec: EnsembleSpec, seed: SeedLike, dense_limit: Optional[int] = None
) -> SparseMatrix:
    """H for any ensemble kind."""
    if spec.kind is EnsembleKind.DIRECTED_ER:
        return sample_directed_er(spec, seed, dense_limit).H
    if spec.kind.graph:
        return sample_inhomogeneous_er(spec, seed, dense_limit).H
    if spec.kind is EnsembleKind.RADEMACHER:
        return sample_rademacher(spec.n, spec.params.q, spec.support, seed)
    return sample_custom_profile(spec, seed)


def sample_pair(
    spec: EnsembleSpec, seed: SeedLike
) -> Tuple[Optional[SparseMatrix], SparseMatrix]:
    """(A, H) for graph ensembles; (None, H) for weighted ones."""
    if spec.kind is EnsembleKind.DIRECTED_ER:
        A, H = sample_directed_er(spec, seed)
        return A, H
    if spec.kind.graph:
        A, H = sample_inhomogeneous_er(spec, seed)
        return A, H
    return None, sample_matrix(spec, seed)
