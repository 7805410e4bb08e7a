"""
Named reference matrices and Matrix Market I/O.
"""
import logging
from pathlib import Path
from typing import Callable, Dict, List, Union

import networkx as nx
import numpy as np
import scipy.io
import scipy.sparse as sp

from ..errors import NotFoundError
from .matrix import SparseMatrix

logger = logging.getLogger(__name__)

_GRAPHS: Dict[str, Callable[[], nx.Graph]] = {
    "edge": lambda: nx.path_graph(2),
    "triangle": lambda: nx.complete_graph(3),
    "k4": lambda: nx.complete_graph(4),
    "k5": lambda: nx.complete_graph(5),
    "petersen": nx.petersen_graph,
    "path4": lambda: nx.path_graph(4),
    "cycle6": lambda: nx.cycle_graph(6),
}


def available_graphs() -> List[str]:
    return sorted(_GRAPHS)


def graph_by_name(name: str) -> nx.Graph:
    try:
        return _GRAPHS[name]()
    except KeyError:
        raise NotFoundError(
            "", resource_type="graph", resource_id=name, suggestions=available_graphs()
        )


def adjacency_matrix(G: nx.Graph, weight: complex = 1.0) -> SparseMatrix:
    """Hermitian matrix with `weight` on every edge of G (vertices in sorted order)."""
    A = nx.to_scipy_sparse_array(
        G, nodelist=sorted(G.nodes()), format="csr", dtype=float
    )
    return SparseMatrix.from_scipy(sp.csr_matrix(A) * weight, hermitian=True)


def named_matrix(name: str, weight: complex = 1.0) -> SparseMatrix:
    """Unit (or constant-weight) adjacency matrix of a named graph."""
    return adjacency_matrix(graph_by_name(name), weight)


def support_edges(name: str) -> List[tuple]:
    """Unordered edges (i < j) of a named graph."""
    return sorted(tuple(sorted(e)) for e in graph_by_name(name).edges())


def load_matrix(path: Union[str, Path]) -> SparseMatrix:
    """Read a Matrix Market file; the Hermitian flag is detected from the data."""
    M = scipy.io.mmread(str(path))
    logger.info(f"Loaded matrix from {path}")
    return SparseMatrix.from_scipy(M)


def save_matrix(H: SparseMatrix, path: Union[str, Path]) -> None:
    data = H.csr if not H.is_real() else H.csr.real
    scipy.io.mmwrite(str(path), sp.coo_matrix(data))
    logger.info(f"Saved matrix {H} to {path}")


def regular_degree(G: nx.Graph) -> int:
    """Common degree of a regular graph (ValueError otherwise)."""
    degrees = {deg for _, deg in G.degree()}
    if len(degrees) != 1:
        raise ValueError("graph is not regular")
    return int(next(iter(degrees)))


def adjacency_eigenvalues(G: nx.Graph) -> np.ndarray:
    return np.linalg.eigvalsh(nx.to_numpy_array(G, nodelist=sorted(G.nodes())))
