"""
Exact trace-moment oracles on finite-support ensembles.

exact_trace_moment averages tr B^l B^{*l} (or tr H^l H^{*l}) over every
realization. path_sum_moment evaluates the same expectation as a sum over walk
classes: for hermitian H,

    E tr B^l B^{*l} = sum_{xi in C} (n - |{xi_1, xi_{2l-1}}|) E prod_i H_{xi_{i-1} xi_i}

where the weight counts the free first index of both walks, and for directed H

    E tr H^l H^{*l} = sum_{(xi^1, xi^2) in C} E prod H(xi^1) conj(prod H(xi^2)).

Both stay in rational arithmetic when every entry law is exact.
"""
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..ensembles import (
    EnsembleSpec,
    entry_laws,
    enumerate_realizations,
    realization_matrix,
)
from ..ensembles.laws import REALIZATION_LIMIT, EntryLaw
from ..errors import SizeGuardError, ValidationError
from ..models import SparseMatrix
from ..nbop import build_nb_operator
from ..spectra import trace_moment
from .multigraph import build_walk_graph
from .paths import (
    Walk,
    WalkMode,
    WalkPair,
    enumerate_c0,
    normalize_path,
    vertex_count,
)

logger = logging.getLogger(__name__)

Number = Union[Fraction, float, complex]
Key = Tuple[int, int]

INJECTION_LIMIT = 10**7
DEFAULT_DELTA = 1 / 42


class MomentTarget(str, Enum):
    B = "B"
    H = "H-directed"


def _is_exact(laws: Dict[Key, EntryLaw]) -> bool:
    scales = {law.scale2 for law in laws.values()}
    return all(law.exact for law in laws.values()) and len(scales) <= 1


def _zero(exact: bool) -> Number:
    return Fraction(0) if exact else 0.0


def _expectation(
    laws: Dict[Key, EntryLaw],
    steps: List[Tuple[int, int, bool]],
    hermitian: bool,
    exact: bool,
) -> Number:
    """E of the product of H_{ab} (conjugated where flagged) over 0-based steps."""
    powers: Dict[Key, List[int]] = defaultdict(lambda: [0, 0])
    for a, b, conj in steps:
        if a == b:
            return _zero(exact)
        if hermitian and a > b:
            a, b, conj = b, a, not conj
        powers[(a, b)][1 if conj else 0] += 1
    value: Number = Fraction(1) if exact else 1.0
    for key, (alpha, beta) in powers.items():
        law = laws.get(key)
        if law is None:
            return _zero(exact)
        value = value * law.moment(alpha, beta)
        if value == 0:
            return _zero(exact)
    return value


def _steps(path: Walk, mapping: Tuple[int, ...]) -> List[Tuple[int, int, bool]]:
    """0-based steps of the relabelled path; the second path of a pair is conjugated."""
    if isinstance(path, WalkPair):
        out = []
        for conj, seq in ((False, path.first), (True, path.second)):
            out.extend(
                (mapping[seq[i - 1] - 1], mapping[seq[i] - 1], conj)
                for i in range(1, len(seq))
            )
        return out
    v = path.vertices
    return [(mapping[v[i - 1] - 1], mapping[v[i] - 1], False) for i in range(1, len(v))]


def _check_path_mode(spec: EnsembleSpec, path: Walk) -> None:
    if isinstance(path, WalkPair) == spec.hermitian:
        raise ValidationError(
            "hermitian ensembles pair with closed paths, directed ones with path pairs",
            field="path",
        )


def class_moment(spec: EnsembleSpec, path: Walk) -> Number:
    """E sum over the relabelling class of `path` (injections [s] -> [n]).

    Raises:
        SizeGuardError: more than 10^7 injections
    """
    _check_path_mode(spec, path)
    laws = entry_laws(spec)
    exact = _is_exact(laws)
    s = vertex_count(path)
    n = spec.n
    if s > n:
        return _zero(exact)
    count = math.perm(n, s)
    if count > INJECTION_LIMIT:
        raise SizeGuardError(
            f"{count} relabellings exceed the limit {INJECTION_LIMIT}",
            limit=INJECTION_LIMIT,
            actual=count,
            field="n",
        )
    normal = normalize_path(path)
    total: Number = _zero(exact)
    floats: List[complex] = []
    for mapping in itertools.permutations(range(n), s):
        term = _expectation(laws, _steps(normal, mapping), spec.hermitian, exact)
        if exact:
            total += term
        else:
            floats.append(complex(term))
    if exact:
        return total
    return _fsum_complex(floats)


def _fsum_complex(values: List[complex]) -> Number:
    re = math.fsum(v.real for v in values)
    im = math.fsum(v.imag for v in values)
    return re if abs(im) <= 1e-14 * max(1.0, abs(re)) else complex(re, im)


def class_moment_bound(path: Walk, n: int, kappa: float, q: float) -> float:
    """n^(1-g) kappa^g q^(2|E| - 2l) for the class of `path`."""
    G = build_walk_graph(path)
    g = G.genus()
    ell = path.ell
    return float(n ** (1 - g) * kappa**g * q ** (2 * G.n_edges - 2 * ell))


def _target(spec: EnsembleSpec, target: Union[str, MomentTarget]) -> MomentTarget:
    target = MomentTarget(target)
    if target is MomentTarget.B and not spec.hermitian:
        raise ValidationError(
            "the B path sum is implemented for hermitian ensembles", field="target"
        )
    if target is MomentTarget.H and spec.hermitian:
        raise ValidationError(
            "target H-directed needs a directed ensemble", field="target"
        )
    return target


def path_sum_moment(
    spec: EnsembleSpec, ell: int, target: Union[str, MomentTarget] = MomentTarget.B
) -> Number:
    """Exact expectation of the trace moment as a sum over walk classes.

    Raises:
        ValidationError: l < 1 or target not matching the ensemble
        SizeGuardError: class relabelling guard
    """
    if ell < 1:
        raise ValidationError("ell must be >= 1", field="ell")
    target = _target(spec, target)
    n = spec.n
    mode = WalkMode.HERMITIAN if target is MomentTarget.B else WalkMode.DIRECTED_PAIR
    classes = enumerate_c0(n, ell, mode)
    exact = _is_exact(entry_laws(spec))
    total: Number = _zero(exact)
    floats: List[complex] = []
    for path in classes:
        value = class_moment(spec, path)
        if target is MomentTarget.B:
            v = path.vertices
            value = value * (n - len({v[1], v[2 * ell - 1]}))
        if exact:
            total += value
        else:
            floats.append(complex(value))
    logger.debug(
        f"Path sum over {len(classes)} classes (n={n}, l={ell}, {target.value})"
    )
    if exact:
        return total
    return _fsum_complex(floats)


def _sign_trace(S: np.ndarray, ell: int, target: MomentTarget) -> int:
    """Integer trace moment of a sign matrix."""
    if target is MomentTarget.H:
        P = np.linalg.matrix_power(S.astype(np.int64), ell)
        return int(np.sum(P * P))
    if not S.any():
        return 0
    op = build_nb_operator(SparseMatrix.from_dense(S.astype(float)))
    return int(round(trace_moment(op, ell).value))


def exact_trace_moment(
    spec: EnsembleSpec,
    ell: int,
    target: Union[str, MomentTarget] = MomentTarget.B,
    limit: int = REALIZATION_LIMIT,
) -> Number:
    """Average trace moment over all realizations, the ground-truth oracle.

    Target B works for any ensemble; target H-directed computes tr H^l H^{*l}.

    Raises:
        ValidationError: l < 1
        SizeGuardError: more than `limit` realizations
    """
    if ell < 1:
        raise ValidationError("ell must be >= 1", field="ell")
    target = MomentTarget(target)
    laws = entry_laws(spec)
    exact = _is_exact(laws)
    n = spec.n

    if exact:
        total = Fraction(0)
        scale2 = next(iter(laws.values())).scale2 if laws else Fraction(1)
        for choice, prob in enumerate_realizations(spec, limit):
            S = realization_matrix(n, laws, choice, spec.hermitian, signs=True)
            total += prob * _sign_trace(S, ell, target)
        return total * scale2**ell

    values: List[float] = []
    for choice, prob in enumerate_realizations(spec, limit):
        M = realization_matrix(n, laws, choice, spec.hermitian)
        if target is MomentTarget.H:
            P = np.linalg.matrix_power(M, ell)
            value = float(np.sum(np.abs(P) ** 2))
        elif not M.any():
            value = 0.0
        else:
            op = build_nb_operator(SparseMatrix.from_dense(M))
            value = trace_moment(op, ell).value
        values.append(float(prob) * value)
    return math.fsum(values)


@dataclass
class MomentEnvelope:
    n: int
    ell: int
    q: float
    measured: float
    target: str
    c0_fit: float
    ell_cap: float
    admissible: bool
    delta: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def ell_cap(
    n: int, q: float, kappa: float = 1.0, delta: float = DEFAULT_DELTA, c0: float = 1.0
) -> float:
    """c0 min(delta q log n, n^(1/6 - delta) / (q kappa^(1/6)))."""
    delta = float(delta)
    return c0 * min(
        delta * q * math.log(n), n ** (1.0 / 6.0 - delta) / (q * kappa ** (1.0 / 6.0))
    )


def proof_ell(q: float, n: int, c: float) -> int:
    """ceil((c/2) q log n), the walk length used for the tail bound on rho(B)."""
    return math.ceil(c / 2 * q * math.log(n))


def moment_envelope(
    n: int,
    ell: int,
    q: float,
    measured: float,
    target: Union[str, MomentTarget] = MomentTarget.B,
    kappa: float = 1.0,
    delta: float = DEFAULT_DELTA,
    c0: float = 1.0,
) -> MomentEnvelope:
    """Fitted C0 = measured / (n^p l^8 q^2), p = 2 for B and 1 for H, and whether
    l satisfies the walk-length hypothesis for `delta`."""
    target = MomentTarget(target)
    power = 2 if target is MomentTarget.B else 1
    fit = 0.0 if measured == 0 else float(measured) / (n**power * ell**8 * q * q)
    cap = ell_cap(n, q, kappa, delta, c0)
    return MomentEnvelope(
        n=n,
        ell=ell,
        q=q,
        measured=float(measured),
        target=target.value,
        c0_fit=fit,
        ell_cap=cap,
        admissible=ell <= cap,
        delta=float(delta),
    )


def coerce(value: Number) -> Optional[float]:
    """Plain float for reporting, None for complex values."""
    if isinstance(value, complex):
        return None if value.imag else value.real
    return float(value)
