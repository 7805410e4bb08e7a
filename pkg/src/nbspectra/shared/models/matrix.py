"""
SparseMatrix - the complex n x n matrix H with explicit support.

Backed by a canonical scipy CSR array: complex128 data, sorted indices, no
stored zeros. Support equals the set of stored keys.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..errors import ValidationError

logger = logging.getLogger(__name__)

Entry = Tuple[int, int, complex]


def _canonical(M) -> sp.csr_matrix:
    csr = sp.csr_matrix(M, dtype=np.complex128)
    csr.sum_duplicates()
    csr.eliminate_zeros()
    csr.sort_indices()
    return csr


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Immutable complex matrix with an explicit support and a Hermitian flag."""

    n: int
    csr: sp.csr_matrix
    hermitian: bool

    # Construction

    @classmethod
    def from_scipy(cls, M, hermitian: Optional[bool] = None) -> "SparseMatrix":
        """Wrap any scipy sparse matrix (or dense array).

        Args:
            M: square matrix
            hermitian: expected flag; None detects it exactly

        Raises:
            ValidationError: non-square input, a nonzero diagonal or a Hermitian
                flag the data contradicts
        """
        csr = _canonical(M)
        if csr.shape[0] != csr.shape[1]:
            raise ValidationError(f"matrix must be square, got {csr.shape}", field="H")
        if csr.diagonal().any():
            raise ValidationError("matrix must have a zero diagonal", field="H")
        if not np.all(np.isfinite(csr.data)):
            raise ValidationError("matrix entries must be finite", field="H")
        is_herm = (csr - csr.conj().T).count_nonzero() == 0
        if hermitian is None:
            hermitian = bool(is_herm)
        elif hermitian and not is_herm:
            raise ValidationError(
                "matrix flagged hermitian but H != H^*", field="hermitian"
            )
        return cls(n=csr.shape[0], csr=csr, hermitian=bool(hermitian))

    @classmethod
    def from_dense(
        cls, M: np.ndarray, hermitian: Optional[bool] = None
    ) -> "SparseMatrix":
        return cls.from_scipy(
            sp.csr_matrix(np.asarray(M, dtype=np.complex128)), hermitian
        )

    @classmethod
    def from_entries(
        cls, n: int, entries: Iterable[Entry], hermitian: bool = False
    ) -> "SparseMatrix":
        """Build from (i, j, value) triples with 0-based indices.

        With hermitian=True a missing mirror entry (j, i) is filled with conj(value);
        an explicit mirror that disagrees is an error.
        """
        values: Dict[Tuple[int, int], complex] = {}
        for i, j, v in entries:
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(
                    f"index ({i}, {j}) outside [0, {n})", field="entries"
                )
            if (i, j) in values and values[(i, j)] != complex(v):
                raise ValidationError(f"entry ({i}, {j}) given twice", field="entries")
            values[(i, j)] = complex(v)
        if hermitian:
            for (i, j), v in list(values.items()):
                mirror = values.get((j, i))
                if mirror is None:
                    values[(j, i)] = v.conjugate()
                elif mirror != v.conjugate():
                    raise ValidationError(
                        f"entries ({i}, {j}) and ({j}, {i}) are not conjugate",
                        field="entries",
                    )
        if values:
            keys = np.array(list(values.keys()), dtype=np.int64)
            data = np.array(list(values.values()), dtype=np.complex128)
            coo = sp.coo_matrix((data, (keys[:, 0], keys[:, 1])), shape=(n, n))
        else:
            coo = sp.coo_matrix((n, n), dtype=np.complex128)
        return cls.from_scipy(coo, hermitian=hermitian if hermitian else None)

    @classmethod
    def zeros(cls, n: int) -> "SparseMatrix":
        return cls(n=n, csr=_canonical(sp.csr_matrix((n, n))), hermitian=True)

    # Views

    @property
    def nnz(self) -> int:
        return int(self.csr.nnz)

    def to_dense(self) -> np.ndarray:
        return self.csr.toarray()

    def support(self) -> List[Tuple[int, int]]:
        """Stored (i, j) pairs in row-major order."""
        coo = self.csr.tocoo()
        return list(zip(coo.row.tolist(), coo.col.tolist()))

    def entries(self) -> List[Entry]:
        coo = self.csr.tocoo()
        return list(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    def is_real(self) -> bool:
        return bool(np.all(self.csr.data.imag == 0))

    def permuted(self, perm: np.ndarray) -> "SparseMatrix":
        """Relabel vertices: new[perm[i], perm[j]] = old[i, j]."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ValidationError(
                "perm must be a permutation of range(n)", field="perm"
            )
        coo = self.csr.tocoo()
        moved = sp.coo_matrix(
            (coo.data, (perm[coo.row], perm[coo.col])), shape=(self.n, self.n)
        )
        return SparseMatrix(n=self.n, csr=_canonical(moved), hermitian=self.hermitian)

    def scaled(self, factor: float) -> "SparseMatrix":
        return SparseMatrix(
            n=self.n, csr=_canonical(self.csr * factor), hermitian=self.hermitian
        )

    def __repr__(self) -> str:
        return f"SparseMatrix(n={self.n}, nnz={self.nnz}, hermitian={self.hermitian})"
