"""
Contraction of a normal path to (U, zeta, k, gamma) and its property checks.

Vertices of G_xi of degree two, other than xi_0 and xi_l, are absorbed into
the edges of U; k_e is the length of the chain an edge replaces. U is
relabelled by the increasing bijection on the surviving vertices, and edges
are named a, b, c, ... in order of first traversal by zeta. A loop of U whose
chain is not a palindrome can be crossed either way round, so every step of
zeta also carries its orientation relative to the first crossing.
"""
import logging
import string
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..errors import ValidationError
from .multigraph import MultiGraph, build_walk_graph
from .paths import Walk, WalkPair, WalkPath, in_c_tilde, is_normal

logger = logging.getLogger(__name__)


def edge_label(index: int) -> str:
    """a, b, ..., z, aa, ab, ..."""
    letters = string.ascii_lowercase
    label = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        label = letters[rem] + label
    return label


@dataclass(frozen=True)
class ReducedPath:
    """A path in U: vertices zeta_0 .. zeta_r and the edge crossed at each step."""

    vertices: Tuple[int, ...]
    edges: Tuple[str, ...]
    orientations: Tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    def word(self) -> str:
        parts = [str(self.vertices[0])]
        for e, v in zip(self.edges, self.vertices[1:]):
            parts.append(e)
            parts.append(str(v))
        return "".join(parts)

    def digits(self) -> str:
        return "".join(map(str, self.vertices))

    def reversed_steps(self) -> List[int]:
        """Steps that cross a loop against its first crossing."""
        return [i for i, o in enumerate(self.orientations) if o < 0]


@dataclass
class ReducedTriple:
    U: MultiGraph
    zeta: Tuple[ReducedPath, ...]
    k: Dict[str, int]
    gamma: int
    directed: bool = False

    def words(self) -> Tuple[str, ...]:
        return tuple(z.word() for z in self.zeta)

    def digit_words(self) -> Tuple[str, ...]:
        return tuple(z.digits() for z in self.zeta)

    def crossings(self) -> Counter:
        return Counter(e for z in self.zeta for e in z.edges)

    def weights(self) -> List[Tuple[str, int]]:
        return sorted(self.k.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def orientations(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(z.orientations for z in self.zeta)

    def signature(self) -> Tuple[Any, ...]:
        """Determines (U, zeta, k): U is recovered from the labelled words."""
        return (
            self.words(),
            self.orientations(),
            tuple(w for _, w in self.weights()),
            self.gamma,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "zeta": list(self.words()),
            "reversed_steps": [z.reversed_steps() for z in self.zeta],
            "k": dict(self.weights()),
            "gamma": self.gamma,
            "vertices": self.U.n_vertices,
            "edges": self.U.n_edges,
            "genus": self.U.genus(),
            "directed": self.directed,
        }


def _sequences(path: Walk) -> List[Tuple[int, ...]]:
    if isinstance(path, WalkPair):
        return [path.first, path.second]
    return [path.vertices]


def reduce_path(path: Walk) -> ReducedTriple:
    """(U, zeta, k, gamma) for a normal path of C~ with l >= 1.

    Raises:
        ValidationError: path not normal in G_xi, not in C~, or l = 0
    """
    if path.ell < 1:
        raise ValidationError("reduction needs l >= 1", field="path")
    if not in_c_tilde(path):
        raise ValidationError("path violates the walk constraints", field="path")
    if not is_normal(path):
        raise ValidationError(
            "path is not normal in its walk graph; normalize first",
            field="path",
            suggestions=["normalize_path"],
        )
    directed = isinstance(path, WalkPair)
    G = build_walk_graph(path)
    degrees = G.degrees()
    ends = {path.vertices[0], path.midpoint}
    kept = sorted(v for v, deg in degrees.items() if deg != 2 or v in ends)
    tau = {v: i + 1 for i, v in enumerate(kept)}
    kept_set = set(kept)

    chain_labels: Dict[Tuple[int, ...], str] = {}
    first_chain: Dict[str, Tuple[int, ...]] = {}
    k: Dict[str, int] = {}
    U = MultiGraph(directed)
    for v in kept:
        U.add_vertex(tau[v])

    zeta: List[ReducedPath] = []
    for seq in _sequences(path):
        vertices = [tau[seq[0]]]
        labels: List[str] = []
        orientations: List[int] = []
        i = 0
        while i < len(seq) - 1:
            j = i + 1
            while seq[j] not in kept_set:
                j += 1
            chain = tuple(seq[i : j + 1])
            key = chain if directed else min(chain, chain[::-1])
            label = chain_labels.get(key)
            if label is None:
                label = edge_label(len(chain_labels))
                chain_labels[key] = label
                first_chain[label] = chain
                k[label] = len(chain) - 1
                U.add_edge(tau[key[0]], tau[key[-1]], key=label, weight=k[label])
            labels.append(label)
            reverse = chain[0] == chain[-1] and chain != first_chain[label]
            orientations.append(-1 if reverse else 1)
            vertices.append(tau[seq[j]])
            i = j
        zeta.append(ReducedPath(tuple(vertices), tuple(labels), tuple(orientations)))

    triple = ReducedTriple(
        U=U, zeta=tuple(zeta), k=k, gamma=tau[path.midpoint], directed=directed
    )
    logger.debug(f"Reduced l={path.ell} path to {U}, gamma={triple.gamma}")
    return triple


def expand_triple(triple: ReducedTriple) -> Walk:
    """The normal path whose reduction is `triple`.

    Each edge of U is unfolded into k_e steps through fresh vertices the first
    time zeta crosses it; later crossings reuse those vertices, in reverse when
    the crossing runs against the first one.
    """
    labels: Dict[int, int] = {}
    chains: Dict[str, Tuple[int, List[int]]] = {}
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0]

    def original(u: int) -> int:
        if u not in labels:
            labels[u] = fresh()
        return labels[u]

    sequences: List[Tuple[int, ...]] = []
    for z in triple.zeta:
        seq = [original(z.vertices[0])]
        orientations = z.orientations or (1,) * z.length
        for step, (edge, orientation) in enumerate(zip(z.edges, orientations)):
            u, v = z.vertices[step], z.vertices[step + 1]
            if edge not in chains:
                chains[edge] = (u, [fresh() for _ in range(triple.k[edge] - 1)])
                seq.extend(chains[edge][1])
            else:
                start, inner = chains[edge]
                forward = orientation > 0 if u == v else u == start
                seq.extend(inner if forward else inner[::-1])
            seq.append(original(v))
        sequences.append(tuple(seq))

    if triple.directed:
        return WalkPair(sequences[0], sequences[1])
    return WalkPath(sequences[0])


def _reduced_is_normal(triple: ReducedTriple) -> bool:
    seen: List[int] = []
    for z in triple.zeta:
        for v in z.vertices:
            if v not in seen:
                if seen and v < max(seen):
                    return False
                seen.append(v)
    return sorted(seen) == list(range(1, triple.U.n_vertices + 1))


@dataclass
class ReductionReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    signature: Optional[Tuple[Any, ...]] = None
    genus: int = 0
    degree1_vertices: int = 0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["signature"] = repr(self.signature)
        result["passed"] = self.passed
        return result


def verify_reduction(
    path: Walk, triple: Optional[ReducedTriple] = None
) -> ReductionReport:
    """Check the structural properties of the reduction of `path`.

    Failures are returned as data. The degree bound reads "at most n vertices
    of degree one" with n the actual number of degree-one vertices of U.
    """
    triple = triple or reduce_path(path)
    G = build_walk_graph(path)
    U = triple.U
    report = ReductionReport(signature=triple.signature())

    g_xi = G.genus()
    g_u = U.genus()
    report.genus = g_u
    degrees = U.degrees()
    ends = {1, triple.gamma}
    crossings = triple.crossings()

    firsts = {z.vertices[0] for z in triple.zeta}
    lasts = {z.vertices[-1] for z in triple.zeta}
    if triple.directed:
        endpoints_ok = firsts == {1} and lasts == {triple.gamma}
    else:
        endpoints_ok = firsts == {1} and lasts == {1}

    report.checks["reconstructs"] = expand_triple(triple) == path
    report.checks["genus_preserved"] = g_u == g_xi
    report.checks["zeta_normal"] = _reduced_is_normal(triple) and endpoints_ok
    report.checks["core_degree"] = all(
        deg >= 3 for v, deg in degrees.items() if v not in ends
    ) and all(degrees[v] >= 1 for v in ends)
    report.checks["weight_sum"] = sum(triple.k.values()) == G.n_edges
    report.checks["crossings_at_least_two"] = all(
        crossings[e] >= 2 for e in triple.k
    )
    report.checks["length_identity"] = 2 * path.ell == sum(
        crossings[e] * w for e, w in triple.k.items()
    )
    report.checks["edge_bounds"] = max(g_u, 1) <= U.n_edges <= 3 * g_u + 1
    report.checks["vertex_bound"] = U.n_vertices <= 2 * g_u + 2

    report.degree1_vertices = sum(1 for deg in degrees.values() if deg == 1)
    degree_cap = 2 * g_u + report.degree1_vertices
    report.checks["max_degree"] = max(degrees.values()) <= degree_cap
    if not report.passed:
        logger.warning(f"Reduction of {path} fails {report.failures}")
    return report


@dataclass
class SweepReport:
    total: int = 0
    failures: Dict[str, int] = field(default_factory=dict)
    collisions: int = 0
    failed_paths: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.collisions == 0

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["passed"] = self.passed
        return result


def sweep_reductions(paths: Iterable[Walk], keep_failed: int = 20) -> SweepReport:
    """verify_reduction on every path plus injectivity of the reduction."""
    report = SweepReport()
    seen: Dict[Tuple[Any, ...], str] = {}
    for path in paths:
        report.total += 1
        single = verify_reduction(path)
        for name in single.failures:
            report.failures[name] = report.failures.get(name, 0) + 1
        previous = seen.get(single.signature)
        if previous is not None and previous != str(path):
            report.collisions += 1
        else:
            seen[single.signature] = str(path)
        if not single.passed and len(report.failed_paths) < keep_failed:
            report.failed_paths.append(str(path))
    logger.info(
        f"Swept {report.total} reductions: {report.failures or 'all pass'}, "
        f"{report.collisions} collisions"
    )
    return report


def reduction_summary(path: Walk) -> Dict[str, Any]:
    """Reduction plus property report, JSON-ready."""
    triple = reduce_path(path)
    report = verify_reduction(path, triple)
    return {"reduction": triple.to_dict(), "report": report.to_dict()}
