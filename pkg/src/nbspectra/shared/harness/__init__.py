"""Seeded Monte Carlo experiments, their records and the config runner."""
from .experiments import (
    ExperimentResult,
    GridPoint,
    run_concentration,
    run_crossover,
    run_directed_outlier,
    run_experiment,
    run_moment_envelope,
    run_norm_curve,
    run_tail_experiment,
)
from .records import AGGREGATE_TRIAL, COLUMNS, TrialRecord, read_results, write_results
from .runner import (
    RunOutcome,
    render_csv,
    run_catalog_entry,
    run_config,
    run_config_file,
)
from .stats import bennett_h, eta, wilson_interval

__all__ = [
    "AGGREGATE_TRIAL",
    "COLUMNS",
    "ExperimentResult",
    "GridPoint",
    "RunOutcome",
    "TrialRecord",
    "bennett_h",
    "eta",
    "read_results",
    "render_csv",
    "run_catalog_entry",
    "run_concentration",
    "run_config",
    "run_config_file",
    "run_crossover",
    "run_directed_outlier",
    "run_experiment",
    "run_moment_envelope",
    "run_norm_curve",
    "run_tail_experiment",
    "wilson_interval",
    "write_results",
]
