"""
Seeded Monte Carlo experiments.

Every experiment walks its grid in config order. Within a grid point the
trials run on a thread pool, each with its own Philox stream keyed by
(master_seed, trial), and results are collected in trial order, so the
records depend only on the config. The same trial index draws the same
uniforms at every grid point (common random numbers).

The sparsity scale recorded and used in fitted constants is q = sqrt(d).
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..config.experiment import ExperimentConfig, ExperimentKind
from ..config.settings import get_settings
from ..ensembles import (
    EnsembleSpec,
    SeedSpec,
    sample_directed_er,
    sample_inhomogeneous_er,
    sample_rademacher,
)
from ..errors import SizeGuardError
from ..nbop import build_nb_operator
from ..spectra import (
    SpectralConfig,
    TraceMode,
    centered_extremes,
    dense_spectrum,
    second_adjacency_eigenvalue,
    spectral_radius,
    trace_moment,
)
from ..spectra.moments import EXACT_MAX_EDGES
from ..walks import moment_envelope
from . import stats
from .records import AGGREGATE_TRIAL, TrialRecord

logger = logging.getLogger(__name__)

EXPERIMENT_MAX_ITER = 200
DIRECTED_DENSE_MAX = 2048
# Monte Carlo slack on trend checks
TREND_TOL = 0.02


@dataclass(frozen=True)
class GridPoint:
    n: int
    d: float
    q: float
    kappa: float

    @classmethod
    def of(cls, spec: EnsembleSpec) -> "GridPoint":
        params = spec.params
        return cls(n=spec.n, d=params.d, q=params.q_raw, kappa=params.kappa)


@dataclass
class TrialOutcome:
    values: Dict[str, float]
    runtime_ms: float
    arrays: Dict[str, np.ndarray] = field(default_factory=dict)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: List[TrialRecord] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    elapsed_s: float = 0.0

    def values(self, stat_name: str, aggregate: Optional[bool] = None) -> List[float]:
        """stat_value of every record named `stat_name`, in emission order."""
        out = []
        for r in self.records:
            if r.stat_name != stat_name:
                continue
            if aggregate is not None and (r.trial == AGGREGATE_TRIAL) != aggregate:
                continue
            out.append(r.stat_value)
        return out

    def summary(self) -> Dict[str, Any]:
        return {
            "experiment": self.config.experiment.value,
            "name": self.config.name,
            "records": len(self.records),
            "checks": dict(self.checks),
            "elapsed_s": round(self.elapsed_s, 3),
        }


class _Run:
    """Per-run state: record list, thread count and the trial loop."""

    def __init__(self, cfg: ExperimentConfig, threads: Optional[int] = None):
        self.cfg = cfg
        self.records: List[TrialRecord] = []
        self.checks: Dict[str, bool] = {}
        self.threads = get_settings().resolve_threads(threads, cfg.threads)

    def spectral_config(self, trial: int) -> SpectralConfig:
        return SpectralConfig(
            tol=self.cfg.tol,
            max_iter=EXPERIMENT_MAX_ITER,
            restarts=1,
            seed=SeedSpec(self.cfg.master_seed, trial),
            dense_check_limit=0,
        )

    def trials(self, fn: Callable[[int], Dict[str, Any]]) -> List[TrialOutcome]:
        def timed(trial: int) -> TrialOutcome:
            start = time.perf_counter()
            values = fn(trial)
            elapsed = (time.perf_counter() - start) * 1000
            arrays = {k: v for k, v in values.items() if isinstance(v, np.ndarray)}
            scalars = {k: float(v) for k, v in values.items() if k not in arrays}
            return TrialOutcome(values=scalars, runtime_ms=elapsed, arrays=arrays)

        indices = range(self.cfg.trials)
        if self.threads <= 1 or self.cfg.trials == 1:
            return [timed(t) for t in indices]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(timed, indices))

    def add(
        self,
        point: Optional[GridPoint],
        trial: int,
        name: str,
        value: Optional[float],
        epsilon: Optional[float] = None,
        runtime_ms: float = 0.0,
    ) -> None:
        if value is None:
            return
        self.records.append(
            TrialRecord(
                experiment=self.cfg.experiment.value,
                n=point.n if point else None,
                d=point.d if point else None,
                q=point.q if point else None,
                kappa=point.kappa if point else None,
                epsilon=epsilon,
                trial=trial,
                seed=self.cfg.master_seed,
                stat_name=name,
                stat_value=float(value),
                runtime_ms=round(runtime_ms, 3) if self.cfg.timing else 0.0,
            )
        )

    def add_trials(self, point: GridPoint, outcomes: Sequence[TrialOutcome]) -> None:
        for trial, outcome in enumerate(outcomes):
            for name, value in outcome.values.items():
                self.add(point, trial, name, value, runtime_ms=outcome.runtime_ms)
        total = sum(o.runtime_ms for o in outcomes)
        logger.info(
            f"{self.cfg.experiment.value}: n={point.n}, d={point.d:.4g}, "
            f"{len(outcomes)} trials in {total:.0f} ms"
        )

    def result(self, start: float) -> ExperimentResult:
        return ExperimentResult(
            config=self.cfg,
            records=self.records,
            checks=self.checks,
            elapsed_s=time.perf_counter() - start,
        )


def _mean(outcomes: Sequence[TrialOutcome], key: str) -> float:
    return math.fsum(o.values[key] for o in outcomes) / len(outcomes)


def _column(outcomes: Sequence[TrialOutcome], key: str) -> List[float]:
    return [o.values[key] for o in outcomes]


def _specs(cfg: ExperimentConfig) -> List[EnsembleSpec]:
    if cfg.ensemble == "sbm":
        return [cfg.build_ensemble(n) for n in cfg.n]
    return [cfg.build_ensemble(n, d) for n in cfg.n for d in cfg.d_values(n)]


def run_tail_experiment(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """Frequency of rho(B) >= 1 + epsilon per grid point, with Wilson intervals."""
    start = time.perf_counter()
    run = _Run(cfg, threads)
    epsilons = sorted(cfg.epsilon)
    monotone = True

    for spec in _specs(cfg):
        point = GridPoint.of(spec)

        def trial(t: int) -> Dict[str, Any]:
            sample = sample_inhomogeneous_er(spec, SeedSpec(cfg.master_seed, t))
            result = spectral_radius(
                build_nb_operator(sample.H), run.spectral_config(t)
            )
            return {"rho_b": result.rho, "converged": float(result.converged)}

        outcomes = run.trials(trial)
        run.add_trials(point, outcomes)
        rhos = _column(outcomes, "rho_b")
        frequencies = []
        for eps in epsilons:
            hits = sum(1 for rho in rhos if rho >= 1 + eps)
            frequency = hits / cfg.trials
            low, high = stats.wilson_interval(hits, cfg.trials)
            frequencies.append(frequency)
            run.add(point, AGGREGATE_TRIAL, "tail_frequency", frequency, eps)
            run.add(point, AGGREGATE_TRIAL, "wilson_low", low, eps)
            run.add(point, AGGREGATE_TRIAL, "wilson_high", high, eps)
            exponent = stats.tail_exponent(high, point.n, point.q, eps)
            run.add(point, AGGREGATE_TRIAL, "tail_exponent_c", exponent, eps)
        ok = stats.is_non_increasing(frequencies)
        monotone = monotone and ok
        run.add(point, AGGREGATE_TRIAL, "eta", stats.eta(point.n, point.q))
        run.add(point, AGGREGATE_TRIAL, "epsilon_monotone", float(ok))

    run.checks["epsilon_monotone"] = monotone
    return run.result(start)


def run_norm_curve(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """Mean ||H|| against eta = sqrt(log n)/q with the fitted constants."""
    start = time.perf_counter()
    run = _Run(cfg, threads)
    fitted: List[float] = []
    means_by_n: Dict[int, List[float]] = {}

    for spec in _specs(cfg):
        point = GridPoint.of(spec)

        def trial(t: int) -> Dict[str, Any]:
            sample = sample_inhomogeneous_er(spec, SeedSpec(cfg.master_seed, t))
            norm = centered_extremes(sample, run.spectral_config(t)).opnorm
            row = math.sqrt(float(sample.centered_row_sq_sums().max()))
            return {"norm_h": norm, "norm_2_inf": row}

        outcomes = run.trials(trial)
        run.add_trials(point, outcomes)
        mean_norm = _mean(outcomes, "norm_h")
        mean_row = _mean(outcomes, "norm_2_inf")
        eta_value = stats.eta(point.n, point.q)
        c_fit = stats.norm_constant(mean_norm, eta_value)
        fitted.append(c_fit)
        means_by_n.setdefault(point.n, []).append(mean_norm)

        run.add(point, AGGREGATE_TRIAL, "mean_norm_h", mean_norm)
        run.add(point, AGGREGATE_TRIAL, "mean_norm_2_inf", mean_row)
        run.add(point, AGGREGATE_TRIAL, "eta", eta_value)
        run.add(point, AGGREGATE_TRIAL, "fitted_c", c_fit)
        if mean_row > 0:
            refined = stats.refined_constant(mean_norm, mean_row, point.q)
            run.add(point, AGGREGATE_TRIAL, "refined_c", refined)
        if stats.small_degree_applies(point.n, point.d, spec.profile.max_entry()):
            small = stats.small_degree_constant(mean_norm, point.n, point.d)
            run.add(point, AGGREGATE_TRIAL, "small_degree_c", small)

    run.add(None, AGGREGATE_TRIAL, "fitted_c_max", max(fitted))
    run.add(None, AGGREGATE_TRIAL, "fitted_c_min", min(fitted))
    run.checks["norm_non_increasing_in_d"] = all(
        stats.is_non_increasing(means, TREND_TOL) for means in means_by_n.values()
    )
    return run.result(start)


def run_crossover(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """||H|| and lambda_2(A)/sqrt(d) along a degree grid around log n."""
    start = time.perf_counter()
    run = _Run(cfg, threads)
    trends: List[bool] = []

    for n in cfg.n:
        means = []
        for d in cfg.d_values(n):
            spec = cfg.build_ensemble(n, d)
            point = GridPoint.of(spec)

            def trial(t: int) -> Dict[str, Any]:
                sample = sample_inhomogeneous_er(spec, SeedSpec(cfg.master_seed, t))
                scfg = run.spectral_config(t)
                norm = centered_extremes(sample, scfg).opnorm
                lam2 = second_adjacency_eigenvalue(sample.A, scfg)
                return {"norm_h": norm, "lambda2_scaled": lam2 / math.sqrt(point.d)}

            outcomes = run.trials(trial)
            run.add_trials(point, outcomes)
            for key in ("norm_h", "lambda2_scaled"):
                values = _column(outcomes, key)
                q25, q50, q75 = stats.quartiles(values)
                run.add(point, AGGREGATE_TRIAL, f"mean_{key}", _mean(outcomes, key))
                run.add(point, AGGREGATE_TRIAL, f"q25_{key}", q25)
                run.add(point, AGGREGATE_TRIAL, f"median_{key}", q50)
                run.add(point, AGGREGATE_TRIAL, f"q75_{key}", q75)
            eta_value = stats.eta(point.n, point.q)
            run.add(point, AGGREGATE_TRIAL, "eta", eta_value)
            reference = stats.sparse_reference(eta_value)
            run.add(point, AGGREGATE_TRIAL, "sparse_reference", reference)
            means.append(_mean(outcomes, "norm_h"))
        trends.append(stats.is_non_increasing(means, TREND_TOL))

    run.checks["norm_non_increasing_in_d"] = all(trends)
    return run.result(start)


def run_concentration(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """Fluctuations of ||H|| and the Bennett tail of the row sums sum_j |H_ij|^2."""
    start = time.perf_counter()
    run = _Run(cfg, threads)
    scaled_std: List[float] = []

    for spec in _specs(cfg):
        point = GridPoint.of(spec)

        def trial(t: int) -> Dict[str, Any]:
            sample = sample_inhomogeneous_er(spec, SeedSpec(cfg.master_seed, t))
            norm = centered_extremes(sample, run.spectral_config(t)).opnorm
            return {"norm_h": norm, "row_sums": sample.centered_row_sq_sums()}

        outcomes = run.trials(trial)
        run.add_trials(point, outcomes)
        q_std = point.q * stats.sample_std(_column(outcomes, "norm_h"))
        scaled_std.append(q_std)
        run.add(point, AGGREGATE_TRIAL, "q_std_norm_h", q_std)

        rows = np.concatenate([o.arrays["row_sums"] for o in outcomes])
        for t in cfg.t:
            h = stats.bennett_h(t)
            frequency = float(np.mean(rows >= 1 + t))
            envelope = math.exp(-point.q**2 * h)
            run.add(point, AGGREGATE_TRIAL, "bennett_h", h, t)
            run.add(point, AGGREGATE_TRIAL, "row_tail_frequency", frequency, t)
            run.add(point, AGGREGATE_TRIAL, "bennett_envelope", envelope, t)
            if frequency == 0:
                run.add(point, AGGREGATE_TRIAL, "bennett_constant", 0.0, t)
            elif envelope > 0:
                run.add(
                    point, AGGREGATE_TRIAL, "bennett_constant", frequency / envelope, t
                )

    run.add(None, AGGREGATE_TRIAL, "q_std_norm_h_max", max(scaled_std))
    return run.result(start)


def run_directed_outlier(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """Centered spectral radius and the Perron outlier of directed ER.

    Raises:
        SizeGuardError: n above the dense eigensolver limit
    """
    start = time.perf_counter()
    run = _Run(cfg, threads)
    for n in cfg.n:
        if n > DIRECTED_DENSE_MAX:
            raise SizeGuardError(
                f"directed-outlier uses dense spectra; "
                f"n={n} exceeds {DIRECTED_DENSE_MAX}",
                limit=DIRECTED_DENSE_MAX,
                actual=n,
                field="n",
            )
    epsilons = sorted(cfg.epsilon)
    always_single = True

    for spec in _specs(cfg):
        point = GridPoint.of(spec)
        root_d = math.sqrt(point.d)

        def trial(t: int) -> Dict[str, Any]:
            sample = sample_directed_er(
                spec, SeedSpec(cfg.master_seed, t), dense_limit=DIRECTED_DENSE_MAX
            )
            centered = dense_spectrum(sample.H.to_dense())
            raw = dense_spectrum(sample.A.to_dense())
            rho = float(np.max(np.abs(centered))) if centered.size else 0.0
            values: Dict[str, Any] = {"rho_centered": rho}
            for i, eps in enumerate(epsilons):
                radius = (1 + eps) * root_d
                near = np.abs(raw - point.d) <= radius
                escaped = (np.abs(raw) > radius) & ~near
                values[f"outlier_count_{i}"] = float(np.count_nonzero(near))
                values[f"escape_count_{i}"] = float(np.count_nonzero(escaped))
            return values

        outcomes = run.trials(trial)
        rhos = _column(outcomes, "rho_centered")
        for t, outcome in enumerate(outcomes):
            ms = outcome.runtime_ms
            run.add(
                point, t, "rho_centered", outcome.values["rho_centered"], runtime_ms=ms
            )
            for i, eps in enumerate(epsilons):
                v = outcome.values
                run.add(point, t, "outlier_count", v[f"outlier_count_{i}"], eps, ms)
                run.add(point, t, "escape_count", v[f"escape_count_{i}"], eps, ms)
        logger.info(f"directed-outlier: n={point.n}, d={point.d:.4g} done")

        for i, eps in enumerate(epsilons):
            within = sum(1 for rho in rhos if rho <= 1 + eps)
            single = sum(
                1
                for o in outcomes
                if o.values[f"outlier_count_{i}"] == 1
                and o.values[f"escape_count_{i}"] == 0
            )
            exceed = cfg.trials - within
            low, high = stats.wilson_interval(exceed, cfg.trials)
            run.add(
                point, AGGREGATE_TRIAL, "rho_within_fraction", within / cfg.trials, eps
            )
            run.add(
                point,
                AGGREGATE_TRIAL,
                "single_outlier_fraction",
                single / cfg.trials,
                eps,
            )
            run.add(point, AGGREGATE_TRIAL, "wilson_low", low, eps)
            run.add(point, AGGREGATE_TRIAL, "wilson_high", high, eps)
            exponent = stats.tail_exponent(high, point.n, point.q, eps, power=2.0)
            run.add(point, AGGREGATE_TRIAL, "tail_exponent_c", exponent, eps)
            always_single = always_single and single == cfg.trials

    run.checks["single_outlier"] = always_single
    return run.result(start)


def run_moment_envelope(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """Trace moments of Rademacher matrices on sampled ER supports.

    Trial t draws its support from stream 2t and its signs from stream 2t + 1.
    """
    start = time.perf_counter()
    run = _Run(cfg, threads)
    fits: List[float] = []

    for n in cfg.n:
        for d in cfg.d_values(n):
            support_spec = EnsembleSpec.erdos_renyi(n, d)
            point = GridPoint.of(support_spec)
            q = point.q

            def trial(t: int) -> Dict[str, Any]:
                graph = sample_inhomogeneous_er(
                    support_spec, SeedSpec(cfg.master_seed, 2 * t)
                )
                H = sample_rademacher(
                    n, q, graph.A.support(), SeedSpec(cfg.master_seed, 2 * t + 1)
                )
                op = build_nb_operator(H)
                exact = op.m <= EXACT_MAX_EDGES
                mode = TraceMode.EXACT if exact else TraceMode.STOCHASTIC
                scfg = run.spectral_config(t)
                return {
                    f"trace_moment_l{ell}": trace_moment(op, ell, mode, scfg).value
                    for ell in cfg.ell
                }

            outcomes = run.trials(trial)
            run.add_trials(point, outcomes)
            for ell in cfg.ell:
                measured = _mean(outcomes, f"trace_moment_l{ell}")
                envelope = moment_envelope(n, ell, q, measured, kappa=point.kappa)
                fits.append(envelope.c0_fit)
                run.add(point, AGGREGATE_TRIAL, f"mean_trace_moment_l{ell}", measured)
                run.add(point, AGGREGATE_TRIAL, f"c0_fit_l{ell}", envelope.c0_fit)
                run.add(point, AGGREGATE_TRIAL, f"ell_cap_l{ell}", envelope.ell_cap)
                admissible = float(envelope.admissible)
                run.add(point, AGGREGATE_TRIAL, f"admissible_l{ell}", admissible)

    run.add(None, AGGREGATE_TRIAL, "c0_fit_max", max(fits))
    return run.result(start)


RUNNERS: Dict[ExperimentKind, Callable[..., ExperimentResult]] = {
    ExperimentKind.TAIL: run_tail_experiment,
    ExperimentKind.NORM_CURVE: run_norm_curve,
    ExperimentKind.CROSSOVER: run_crossover,
    ExperimentKind.CONCENTRATION: run_concentration,
    ExperimentKind.DIRECTED_OUTLIER: run_directed_outlier,
    ExperimentKind.MOMENT_ENVELOPE: run_moment_envelope,
}


def run_experiment(
    cfg: ExperimentConfig, threads: Optional[int] = None
) -> ExperimentResult:
    """Dispatch on cfg.experiment."""
    logger.info(
        f"Running {cfg.experiment.value} ({cfg.name or 'unnamed'}): "
        f"{cfg.trials} trials, master_seed={cfg.master_seed}"
    )
    result = RUNNERS[cfg.experiment](cfg, threads)
    logger.info(
        f"Finished {cfg.experiment.value}: {len(result.records)} records "
        f"in {result.elapsed_s:.1f} s, checks {result.checks}"
    )
    return result
