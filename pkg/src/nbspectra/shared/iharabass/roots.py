"""
Both directions of the determinant identity at validation scale.

Forward: every guarded eigenvalue of dense B makes det(M - H(lambda)) vanish
relative to a nearby reference point. Converse: real roots of the determinant,
found on the real line between its poles, are eigenvalues of B.

Both directions use the row-balanced determinant, so a root next to a pole is
judged on the same scale as one far from it.
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..errors import GuardError, ValidationError
from ..models import SparseMatrix
from ..nbop import build_nb_operator, nb_dense
from ..spectra import dense_spectrum
from .formula import GUARD_EPS, SKIP_BAND, balanced_logdet, guard_value

logger = logging.getLogger(__name__)

REFERENCE_OFFSET = 0.5
RATIO_TOL = 1e-8
MATCH_TOL = 1e-6
GRID_POINTS = 2000
POLE_PAD_RTOL = 1e-7
DEDUPE_TOL = 1e-7


def reference_logabs(H: SparseMatrix, lam: complex, guard: float = GUARD_EPS) -> float:
    """Balanced log|det| at lambda + 0.5, falling back to lambda - 0.5 and lambda + 0.5i."""
    for offset in (REFERENCE_OFFSET, -REFERENCE_OFFSET, 1j * REFERENCE_OFFSET):
        try:
            return balanced_logdet(H, lam + offset, guard)[0]
        except GuardError:
            continue
    raise GuardError(f"no guarded reference point near lambda={lam}")


def det_ratio(H: SparseMatrix, lam: complex, guard: float = GUARD_EPS) -> float:
    """|det(lambda)| / |det(reference)|, both row-balanced."""
    logabs, _ = balanced_logdet(H, lam, guard)
    diff = logabs - reference_logabs(H, lam, guard)
    return 0.0 if diff == -math.inf else math.exp(min(diff, 700.0))


def _poles(H: SparseMatrix) -> np.ndarray:
    coo = H.csr.tocoo()
    moduli = np.abs(coo.data)
    return np.unique(np.concatenate([[0.0], moduli, -moduli]))


def search_radius(H: SparseMatrix) -> float:
    """Max absolute row sum + 1; bounds every eigenvalue of B."""
    if H.nnz == 0:
        return 1.0
    return float(np.abs(H.to_dense()).sum(axis=1).max()) + 1.0


def pole_pad(radius: float, guard: float = GUARD_EPS) -> float:
    """Distance kept from each pole.

    Next to a pole p the guard reads |lambda - p| |lambda + p| > guard, and at
    p = 0 that is |lambda| > sqrt(guard); 2 sqrt(guard) clears every pole.
    """
    return max(POLE_PAD_RTOL * max(1.0, radius), 2.0 * math.sqrt(guard))


def _guarded_logdet(H: SparseMatrix, lam: float, guard: float) -> Tuple[float, complex]:
    try:
        return balanced_logdet(H, lam, guard)
    except GuardError:
        return math.inf, 0j


def _signed_det(H: SparseMatrix, lam: float, guard: float) -> float:
    logabs, phase = _guarded_logdet(H, lam, guard)
    return math.copysign(math.exp(max(min(logabs, 700.0), -700.0)), phase.real)


def real_roots(
    H: SparseMatrix,
    guard: float = GUARD_EPS,
    grid_points: int = GRID_POINTS,
) -> List[float]:
    """Real roots of lambda -> det(M(lambda) - H(lambda)) for Hermitian H.

    The search interval [-R, R], R = max absolute row sum + 1, is split at the
    poles {0, +-|H_ij|}, each padded by pole_pad. Sign changes are bracketed
    with brentq and tangential minima of log|det| are refined with
    minimize_scalar.
    """
    if not H.hermitian:
        raise ValidationError(
            "real-line root search needs a Hermitian matrix", field="H"
        )
    if H.nnz == 0:
        return []
    radius = search_radius(H)
    pad = pole_pad(radius, guard)
    breaks = np.concatenate([[-radius], _poles(H), [radius]])
    breaks = np.unique(breaks[(breaks >= -radius) & (breaks <= radius)])

    roots: List[float] = []
    for a, b in zip(breaks[:-1], breaks[1:]):
        lo, hi = a + pad, b - pad
        if hi <= lo:
            continue
        count = max(50, int(grid_points * (hi - lo) / (2 * radius)))
        grid = np.linspace(lo, hi, count)
        logs, signs = [], []
        for lam in grid:
            logabs, phase = _guarded_logdet(H, float(lam), guard)
            logs.append(logabs)
            signs.append(np.sign(phase.real))
        logs_arr = np.array(logs)

        for k in range(count - 1):
            if signs[k] * signs[k + 1] < 0:
                root = brentq(
                    lambda t: _signed_det(H, t, guard), grid[k], grid[k + 1], xtol=1e-14
                )
                roots.append(float(root))
            elif signs[k] == 0 and math.isfinite(logs_arr[k]):
                roots.append(float(grid[k]))

        for k in range(1, count - 1):
            if logs_arr[k] < logs_arr[k - 1] and logs_arr[k] < logs_arr[k + 1]:
                found = minimize_scalar(
                    lambda t: _guarded_logdet(H, t, guard)[0],
                    bounds=(grid[k - 1], grid[k + 1]),
                    method="bounded",
                    options={"xatol": 1e-13},
                )
                candidate = float(found.x)
                try:
                    if det_ratio(H, candidate, guard) <= RATIO_TOL:
                        roots.append(candidate)
                except GuardError:
                    continue

    roots.sort()
    deduped: List[float] = []
    for r in roots:
        if not deduped or abs(r - deduped[-1]) > DEDUPE_TOL:
            deduped.append(r)
    logger.debug(
        f"Found {len(deduped)} real determinant roots in [-{radius:.3g}, {radius:.3g}]"
    )
    return deduped


@dataclass
class EquivalenceReport:
    checked: int = 0
    skipped: int = 0
    failed: List[complex] = field(default_factory=list)
    worst_ratio: float = 0.0
    roots: List[float] = field(default_factory=list)
    unmatched_roots: List[float] = field(default_factory=list)
    real_eigenvalues: int = 0
    recovered: int = 0
    missed: List[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failed and not self.unmatched_roots and not self.missed

    def to_dict(self) -> Dict[str, Any]:
        result = asdict(self)
        result["failed"] = [{"re": z.real, "im": z.imag} for z in self.failed]
        result["passed"] = self.passed
        return result


def ib_equivalence(
    H: SparseMatrix,
    guard: float = GUARD_EPS,
    skip_band: float = SKIP_BAND,
    ratio_tol: float = RATIO_TOL,
    match_tol: float = MATCH_TOL,
) -> EquivalenceReport:
    """Check the determinant identity against the dense spectrum of B."""
    op = build_nb_operator(H)
    spectrum = dense_spectrum(nb_dense(op))
    report = EquivalenceReport()
    for lam in spectrum:
        lam = complex(lam)
        if guard_value(H, lam)[0] <= skip_band:
            report.skipped += 1
            continue
        ratio = det_ratio(H, lam, guard)
        report.checked += 1
        report.worst_ratio = max(report.worst_ratio, ratio)
        if ratio > ratio_tol:
            report.failed.append(lam)

    if H.hermitian:
        report.roots = real_roots(H, guard)
        for root in report.roots:
            if spectrum.size == 0 or np.min(np.abs(spectrum - root)) > match_tol:
                report.unmatched_roots.append(root)
        margin = 2 * pole_pad(search_radius(H), guard)
        poles = _poles(H)
        for lam in spectrum:
            if abs(lam.imag) > 1e-8 * (1 + abs(lam)):
                continue
            if guard_value(H, lam)[0] <= skip_band:
                continue
            if np.min(np.abs(poles - lam.real)) <= margin:
                continue
            report.real_eigenvalues += 1
            nearest = min((abs(r - lam.real) for r in report.roots), default=math.inf)
            if nearest <= match_tol:
                report.recovered += 1
            else:
                report.missed.append(float(lam.real))
    if not report.passed:
        logger.warning(f"Determinant identity check failed: {report.to_dict()}")
    return report


def regular_b_spectrum(
    adjacency_eigenvalues: Sequence[float], d: int, n_edges: int
) -> np.ndarray:
    """Spectrum of B for a d-regular graph with |E| = n_edges.

    Each adjacency eigenvalue mu contributes the roots of l^2 - mu l + (d - 1);
    +1 and -1 each appear |E| - n more times.
    """
    mus = np.asarray(adjacency_eigenvalues, dtype=float)
    n = len(mus)
    extra = n_edges - n
    if extra < 0:
        raise ValidationError(
            "a d-regular graph with d >= 2 has |E| >= n", field="n_edges"
        )
    values: List[complex] = []
    for mu in mus:
        values.extend(np.roots([1.0, -mu, d - 1.0]).astype(complex).tolist())
    values.extend([1.0 + 0j] * extra + [-1.0 + 0j] * extra)
    return np.array(values, dtype=np.complex128)


def match_spectra(
    a: Sequence[complex], b: Sequence[complex], tol: float
) -> Optional[float]:
    """Largest nearest-neighbour distance from a to b, None if a is empty."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.size == 0:
        return None
    return float(max(np.min(np.abs(b - z)) for z in a))
