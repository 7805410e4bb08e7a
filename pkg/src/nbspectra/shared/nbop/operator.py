"""
Nonbacktracking operator B of a matrix H.

B acts on vectors indexed by directed pairs e = (i, j) with entries
B_{(i,j),(k,l)} = H_kl [j = k] [i != l]. The support-restricted mode keeps only
pairs with H_ij != 0 (length m = nnz(H)); the full mode uses all n^2 pairs and
exists for validation.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator

from ..errors import SizeGuardError, ValidationError
from ..models import SparseMatrix

logger = logging.getLogger(__name__)

FULL_MODE_MAX_N = 64
DENSE_MAX_EDGES = 4096


class NbMode(str, Enum):
    SUPPORT = "support-restricted"
    FULL = "full"


@dataclass(frozen=True, eq=False)
class EdgeIndex:
    """Directed support edges of H in row-major order.

    Edge e has tail tails[e], head heads[e] and weight H[tail, head]. The edges
    leaving vertex j are positions out_ptr[j]:out_ptr[j+1]; reverse[e] is the
    position of (head, tail) or -1 when that pair is off the support.
    """

    n: int
    tails: np.ndarray
    heads: np.ndarray
    weights: np.ndarray
    out_ptr: np.ndarray
    keys: np.ndarray
    reverse: np.ndarray

    @classmethod
    def from_matrix(cls, H: SparseMatrix) -> "EdgeIndex":
        csr = H.csr
        n = H.n
        heads = csr.indices.astype(np.int64)
        tails = np.repeat(np.arange(n, dtype=np.int64), np.diff(csr.indptr))
        keys = tails * n + heads
        reverse_keys = heads * n + tails
        pos = np.searchsorted(keys, reverse_keys)
        found = pos < len(keys)
        found[found] = keys[pos[found]] == reverse_keys[found]
        reverse = np.where(found, pos, -1)
        return cls(
            n=n,
            tails=tails,
            heads=heads,
            weights=csr.data.real.copy() if H.is_real() else csr.data.copy(),
            out_ptr=csr.indptr.astype(np.int64),
            keys=keys,
            reverse=reverse,
        )

    @property
    def m(self) -> int:
        return len(self.tails)

    @property
    def edges(self):
        return list(zip(self.tails.tolist(), self.heads.tolist()))

    @property
    def out_degree(self) -> np.ndarray:
        return np.diff(self.out_ptr)

    def lookup(self, i: int, j: int) -> int:
        """Position of (i, j); KeyError when off the support."""
        key = i * self.n + j
        pos = int(np.searchsorted(self.keys, key))
        if pos < self.m and self.keys[pos] == key:
            return pos
        raise KeyError((i, j))

    def out_adjacency(self, j: int) -> range:
        return range(int(self.out_ptr[j]), int(self.out_ptr[j + 1]))


@dataclass(frozen=True, eq=False)
class NbOperator:
    H: SparseMatrix
    index: EdgeIndex
    mode: NbMode
    # W[tail_e, e] = w_e, so (W x)_j = sum over edges (j, l) of H_jl x_(j,l)
    gather: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.H.n

    @property
    def m(self) -> int:
        return self.index.m

    @property
    def dim(self) -> int:
        return self.n * self.n if self.mode is NbMode.FULL else self.m

    @property
    def is_real(self) -> bool:
        return self.H.is_real()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return nb_apply(self, x)

    def as_linear_operator(self) -> LinearOperator:
        dtype = np.float64 if self.is_real else np.complex128
        return LinearOperator(
            shape=(self.dim, self.dim),
            matvec=lambda x: nb_apply(self, x),
            matmat=lambda X: nb_apply(self, X),
            dtype=dtype,
        )

    def __repr__(self) -> str:
        return f"NbOperator(n={self.n}, m={self.m}, mode={self.mode.value})"


def build_nb_operator(H: SparseMatrix, mode: NbMode = NbMode.SUPPORT) -> NbOperator:
    """Nonbacktracking operator of H.

    Raises:
        SizeGuardError: full mode with n > 64
    """
    mode = NbMode(mode)
    if mode is NbMode.FULL and H.n > FULL_MODE_MAX_N:
        raise SizeGuardError(
            "full mode is validation-only",
            limit=FULL_MODE_MAX_N,
            actual=H.n,
            field="n",
        )
    index = EdgeIndex.from_matrix(H)
    gather = sp.csr_matrix(
        (index.weights, (index.tails, np.arange(index.m))), shape=(H.n, index.m)
    )
    op = NbOperator(H=H, index=index, mode=mode, gather=gather)
    logger.debug(f"Built {op}")
    return op


def _check_length(op: NbOperator, x: np.ndarray) -> None:
    if x.ndim not in (1, 2) or x.shape[0] != op.dim:
        raise ValidationError(
            f"vector of length {x.shape[0] if x.ndim else 0} does not match "
            f"operator dimension {op.dim}",
            field="x",
        )


def nb_apply(op: NbOperator, x: np.ndarray) -> np.ndarray:
    """y = B x via the two-pass rule y_(i,j) = S_j - H_ji x_(j,i).

    Accepts a single vector or a block of column vectors.
    """
    x = np.asarray(x)
    _check_length(op, x)
    idx = op.index
    dtype = np.result_type(x.dtype, op.gather.dtype)

    if op.mode is NbMode.SUPPORT:
        S = op.gather @ x
        y = np.array(S[idx.heads], dtype=dtype)
        has_rev = idx.reverse >= 0
        rev = idx.reverse[has_rev]
        w = idx.weights[rev]
        if x.ndim == 1:
            y[has_rev] -= w * x[rev]
        else:
            y[has_rev] -= w[:, None] * x[rev]
        return y

    n = op.n
    xs = x[idx.keys]
    S = op.gather @ xs
    if x.ndim == 1:
        Y = np.tile(S, (n, 1)).astype(dtype)
        Y[idx.heads, idx.tails] -= idx.weights * xs
        return Y.reshape(n * n)
    k = x.shape[1]
    Y = np.tile(S[None, :, :], (n, 1, 1)).astype(dtype)
    Y[idx.heads, idx.tails, :] -= idx.weights[:, None] * xs
    return Y.reshape(n * n, k)


def _successors(
    idx: EdgeIndex, row_tails: np.ndarray, row_heads: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """(row position, successor edge) for every admissible transition."""
    counts = idx.out_degree[row_heads]
    total = int(counts.sum())
    rows = np.repeat(np.arange(len(row_heads)), counts)
    starts = np.repeat(idx.out_ptr[row_heads], counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    cols = starts + offsets
    keep = idx.heads[cols] != row_tails[rows]
    return rows[keep], cols[keep]


def nb_sparse(op: NbOperator) -> sp.csr_matrix:
    """Explicit sparse B."""
    idx = op.index
    if op.mode is NbMode.SUPPORT:
        rows, cols = _successors(idx, idx.tails, idx.heads)
        return sp.csr_matrix(
            (idx.weights[cols], (rows, cols)), shape=(op.m, op.m)
        )
    n = op.n
    row_tails = np.repeat(np.arange(n, dtype=np.int64), n)
    row_heads = np.tile(np.arange(n, dtype=np.int64), n)
    rows, cols = _successors(idx, row_tails, row_heads)
    return sp.csr_matrix(
        (idx.weights[cols], (rows, idx.keys[cols])), shape=(n * n, n * n)
    )


def nb_dense(op: NbOperator, limit: Optional[int] = None) -> np.ndarray:
    """Explicit dense B.

    Raises:
        SizeGuardError: more than 4096 support edges in restricted mode
    """
    limit = DENSE_MAX_EDGES if limit is None else limit
    if op.mode is NbMode.SUPPORT and op.m > limit:
        raise SizeGuardError(
            f"dense B needs m <= {limit}, got {op.m}",
            limit=limit,
            actual=op.m,
            field="m",
        )
    return nb_sparse(op).toarray()


def full_rows_sq_norm(op: NbOperator, x: np.ndarray):
    """Squared length of B x over all n^2 rows, for x on the support index.

    sum_j (n - outdeg_j) |S_j|^2 + sum_f |S_tail(f) - w_f x_f|^2.
    """
    x = np.asarray(x)
    if x.shape[0] != op.m:
        raise ValidationError(
            f"vector of length {x.shape[0]} does not match support size {op.m}",
            field="x",
        )
    idx = op.index
    S = op.gather @ x
    free = (op.n - idx.out_degree).astype(float)
    if x.ndim == 1:
        corrected = S[idx.tails] - idx.weights * x
        return float(free @ np.abs(S) ** 2 + np.sum(np.abs(corrected) ** 2))
    corrected = S[idx.tails] - idx.weights[:, None] * x
    return free @ np.abs(S) ** 2 + np.sum(np.abs(corrected) ** 2, axis=0)
