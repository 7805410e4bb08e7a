"""
Walk paths over [n] (1-based vertices), membership in the constrained sets and
normal forms.

A hermitian path xi_0 .. xi_{2l} lies in C~ when it is closed, backtracks at
position l and nowhere else, and in C when additionally no unordered edge is
crossed exactly once. A directed pair (xi^1, xi^2) shares its endpoints and
lies in C when no ordered pair is traversed exactly once in total.
"""
import logging
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from ..errors import SizeGuardError, ValidationError

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10**8

Edge = Tuple[int, int]


class WalkMode(str, Enum):
    HERMITIAN = "hermitian"
    DIRECTED_PAIR = "directed-pair"


def _parse_vertices(text: str) -> Tuple[int, ...]:
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    if not tokens:
        raise ValidationError("empty path", field="path")
    try:
        vertices = tuple(int(t) for t in tokens)
    except ValueError as e:
        raise ValidationError(f"path tokens must be integers: {e}", field="path")
    if min(vertices) < 1:
        raise ValidationError("path vertices are 1-based", field="path")
    return vertices


@dataclass(frozen=True)
class WalkPath:
    """Hermitian-mode path xi_0 .. xi_{2l}."""

    vertices: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) % 2 == 0:
            raise ValidationError(
                f"a closed path has odd length 2l+1, got {len(self.vertices)}",
                field="path",
            )

    @classmethod
    def parse(cls, text: str) -> "WalkPath":
        return cls(_parse_vertices(text))

    @property
    def ell(self) -> int:
        return (len(self.vertices) - 1) // 2

    @property
    def mode(self) -> WalkMode:
        return WalkMode.HERMITIAN

    @property
    def midpoint(self) -> int:
        return self.vertices[self.ell]

    def steps(self) -> List[Edge]:
        v = self.vertices
        return [(v[i - 1], v[i]) for i in range(1, len(v))]

    def relabeled(self, mapping: Dict[int, int]) -> "WalkPath":
        return WalkPath(tuple(mapping[v] for v in self.vertices))

    def __str__(self) -> str:
        return ",".join(map(str, self.vertices))


@dataclass(frozen=True)
class WalkPair:
    """Directed-pair path (xi^1, xi^2), each of length l."""

    first: Tuple[int, ...]
    second: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.first) != len(self.second):
            raise ValidationError(
                "both paths of a pair need the same length", field="path"
            )
        if not self.first:
            raise ValidationError("empty path", field="path")

    @classmethod
    def parse(cls, first: str, second: str) -> "WalkPair":
        return cls(_parse_vertices(first), _parse_vertices(second))

    @property
    def ell(self) -> int:
        return len(self.first) - 1

    @property
    def mode(self) -> WalkMode:
        return WalkMode.DIRECTED_PAIR

    @property
    def midpoint(self) -> int:
        return self.first[-1]

    @property
    def vertices(self) -> Tuple[int, ...]:
        """Both paths concatenated, first then second."""
        return self.first + self.second

    def steps(self) -> List[Edge]:
        out = []
        for seq in (self.first, self.second):
            out.extend((seq[i - 1], seq[i]) for i in range(1, len(seq)))
        return out

    def relabeled(self, mapping: Dict[int, int]) -> "WalkPair":
        first = tuple(mapping[v] for v in self.first)
        return WalkPair(first, tuple(mapping[v] for v in self.second))

    def __str__(self) -> str:
        return ",".join(map(str, self.first)) + " | " + ",".join(map(str, self.second))


Walk = Union[WalkPath, WalkPair]


def crossing_counts(path: Walk) -> Counter:
    """m_e for every edge: unordered pairs (u <= v) in hermitian mode, ordered pairs
    for directed pairs."""
    if isinstance(path, WalkPair):
        return Counter(path.steps())
    return Counter((min(a, b), max(a, b)) for a, b in path.steps())


def in_c_tilde(path: Walk) -> bool:
    if isinstance(path, WalkPair):
        return path.first[0] == path.second[0] and path.first[-1] == path.second[-1]
    v = path.vertices
    ell = path.ell
    if v[0] != v[-1]:
        return False
    if ell == 0:
        return True
    if v[ell - 1] != v[ell + 1]:
        return False
    return all(v[i - 1] != v[i + 1] for i in range(1, 2 * ell) if i != ell)


def in_c(path: Walk) -> bool:
    return in_c_tilde(path) and all(m != 1 for m in crossing_counts(path).values())


def _check_guard(n: int, ell: int, exponent: int) -> None:
    if n < 1:
        raise ValidationError("n must be positive", field="n")
    if ell < 0:
        raise ValidationError("ell must be non-negative", field="ell")
    size = n**exponent
    if size > ENUMERATION_LIMIT:
        raise SizeGuardError(
            f"n^{exponent} = {size} exceeds the enumeration limit {ENUMERATION_LIMIT}",
            limit=ENUMERATION_LIMIT,
            actual=size,
            field="n",
        )


def _hermitian_walks(
    labels: Sequence[int], ell: int, new_label=None
) -> Iterator[Tuple[int, ...]]:
    """DFS over C~. With `new_label`, candidates are the labels used so far plus
    one fresh label, which generates normal paths only."""
    length = 2 * ell
    if ell == 0:
        starts = [1] if new_label is not None else list(labels)
        for v in starts:
            yield (v,)
        return

    path: List[int] = []

    def candidates(used: int) -> Sequence[int]:
        if new_label is None:
            return labels
        return range(1, min(used + 1, new_label) + 1)

    def extend(pos: int, used: int) -> Iterator[Tuple[int, ...]]:
        if pos > length:
            yield tuple(path)
            return
        options: Sequence[int]
        if pos == length:
            options = [path[0]]
        elif pos == ell + 1:
            options = [path[ell - 1]]
        else:
            options = candidates(used)
        for v in options:
            prev = pos - 1
            if 1 <= prev <= length - 1 and prev != ell and v == path[pos - 2]:
                continue
            path.append(v)
            yield from extend(pos + 1, max(used, v))
            path.pop()

    starts = [1] if new_label is not None else labels
    for v in starts:
        path.append(v)
        yield from extend(1, v)
        path.pop()


def _directed_pairs(
    labels: Sequence[int], ell: int, new_label=None
) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    total = 2 * (ell + 1)
    seq: List[int] = []

    def extend(pos: int, used: int):
        if pos == total:
            yield tuple(seq[: ell + 1]), tuple(seq[ell + 1 :])
            return
        if pos == ell + 1:
            options: Sequence[int] = [seq[0]]
        elif pos == total - 1:
            options = [seq[ell]]
        elif new_label is None:
            options = labels
        else:
            options = range(1, min(used + 1, new_label) + 1)
        for v in options:
            seq.append(v)
            yield from extend(pos + 1, max(used, v))
            seq.pop()

    starts = [1] if new_label is not None else labels
    for v in starts:
        seq.append(v)
        yield from extend(1, v)
        seq.pop()


def iter_paths(
    n: int, ell: int, mode: WalkMode = WalkMode.HERMITIAN, normal_only: bool = False
) -> Iterator[Walk]:
    """Every member of C~ over [n]; with `normal_only`, only normal representatives."""
    mode = WalkMode(mode)
    labels = list(range(1, n + 1))
    new_label = n if normal_only else None
    if mode is WalkMode.HERMITIAN:
        for v in _hermitian_walks(labels, ell, new_label):
            yield WalkPath(v)
    else:
        if ell == 0:
            raise ValidationError("directed pairs need ell >= 1", field="ell")
        for a, b in _directed_pairs(labels, ell, new_label):
            yield WalkPair(a, b)


def enumerate_paths(
    n: int, ell: int, mode: WalkMode = WalkMode.HERMITIAN
) -> Tuple[List[Walk], List[Walk]]:
    """Complete lists (C~, C) over [n].

    Raises:
        SizeGuardError: n^(2l+1) (hermitian) or n^(2l) (pairs) above 10^8
    """
    mode = WalkMode(mode)
    _check_guard(n, ell, 2 * ell + 1 if mode is WalkMode.HERMITIAN else 2 * ell)
    c_tilde = list(iter_paths(n, ell, mode))
    c = [p for p in c_tilde if in_c(p)]
    logger.debug(
        f"Enumerated n={n}, l={ell}, {mode.value}: |C~|={len(c_tilde)}, |C|={len(c)}"
    )
    return c_tilde, c


def enumerate_c0(n: int, ell: int, mode: WalkMode = WalkMode.HERMITIAN) -> List[Walk]:
    """Normal representatives of C over [n], generated directly in normal order."""
    mode = WalkMode(mode)
    if n < 1:
        raise ValidationError("n must be positive", field="n")
    return [p for p in iter_paths(n, ell, mode, normal_only=True) if in_c(p)]


def normalize_path(path: Walk) -> Walk:
    """Relabel vertices by order of first visit (first path before second)."""
    mapping: Dict[int, int] = {}
    for v in path.vertices:
        if v not in mapping:
            mapping[v] = len(mapping) + 1
    return path.relabeled(mapping)


def is_normal(path: Walk) -> bool:
    return normalize_path(path) == path


def walk_signature(path: Walk) -> str:
    """Class identifier: the normal form as text."""
    return str(normalize_path(path))


def vertex_count(path: Walk) -> int:
    return len(set(path.vertices))
