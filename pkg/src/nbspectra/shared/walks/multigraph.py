"""
Vertex-labelled multigraphs (loops allowed) and the walk graph G_xi.
"""
import logging
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple

import networkx as nx

from ..errors import ValidationError
from .paths import Walk, WalkPair

logger = logging.getLogger(__name__)


class MultiGraph:
    """Undirected or directed multigraph over a networkx backend.

    Degrees count a loop twice; in the directed case deg = indeg + outdeg, so
    a loop contributes once to each.
    """

    def __init__(self, directed: bool = False):
        self.directed = directed
        self._g = nx.MultiDiGraph() if directed else nx.MultiGraph()

    def add_vertex(self, v: int) -> None:
        self._g.add_node(v)

    def add_edge(
        self, u: int, v: int, key: Optional[Hashable] = None, **attrs: Any
    ) -> Hashable:
        return self._g.add_edge(u, v, key=key, **attrs)

    def has_edge(self, u: int, v: int, key: Optional[Hashable] = None) -> bool:
        return self._g.has_edge(u, v, key=key)

    @property
    def vertices(self) -> List[int]:
        return sorted(self._g.nodes)

    @property
    def edges(self) -> List[Tuple[int, int, Hashable]]:
        return list(self._g.edges(keys=True))

    def endpoints(self, key: Hashable) -> Tuple[int, int]:
        for u, v, k in self._g.edges(keys=True):
            if k == key:
                return u, v
        raise KeyError(key)

    def edge_attr(self, name: str) -> Dict[Hashable, Any]:
        return {k: data[name] for _, _, k, data in self._g.edges(keys=True, data=True)}

    @property
    def n_vertices(self) -> int:
        return self._g.number_of_nodes()

    @property
    def n_edges(self) -> int:
        return self._g.number_of_edges()

    def degree(self, v: int) -> int:
        return int(self._g.degree(v))

    def degrees(self) -> Dict[int, int]:
        return {v: int(d) for v, d in self._g.degree()}

    def loops(self) -> int:
        return nx.number_of_selfloops(self._g)

    def is_simple(self) -> bool:
        seen = set()
        for u, v, _ in self._g.edges(keys=True):
            pair = (u, v) if self.directed else (min(u, v), max(u, v))
            if pair in seen:
                return False
            seen.add(pair)
        return True

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        if self.directed:
            return nx.is_weakly_connected(self._g)
        return nx.is_connected(self._g)

    def genus(self) -> int:
        """g = |E| - |V| + 1.

        Raises:
            ValidationError: empty or disconnected graph
        """
        if not self.is_connected():
            raise ValidationError("genus needs a connected graph", field="graph")
        return self.n_edges - self.n_vertices + 1

    def to_networkx(self) -> nx.Graph:
        return self._g.copy()

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"MultiGraph({kind}, |V|={self.n_vertices}, |E|={self.n_edges})"


def from_edges(
    edges: Iterable[Tuple[int, int]],
    directed: bool = False,
    vertices: Iterable[int] = (),
) -> MultiGraph:
    G = MultiGraph(directed)
    for v in vertices:
        G.add_vertex(v)
    for u, v in edges:
        G.add_edge(u, v)
    return G


def build_walk_graph(path: Walk) -> MultiGraph:
    """G_xi: visited vertices and the distinct edges crossed (keys are the edges)."""
    directed = isinstance(path, WalkPair)
    G = MultiGraph(directed)
    for v in path.vertices:
        G.add_vertex(v)
    for a, b in path.steps():
        key = (a, b) if directed else (min(a, b), max(a, b))
        if not G.has_edge(a, b, key=key):
            G.add_edge(a, b, key=key)
    return G


def genus(G: MultiGraph) -> int:
    return G.genus()
