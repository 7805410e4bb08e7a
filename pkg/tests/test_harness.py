"""Test the experiment harness: statistics, records and seeded runs."""

import math

import pytest

from nbspectra.shared.config import get_catalog, parse_config
from nbspectra.shared.errors import ValidationError
from nbspectra.shared.harness import (
    AGGREGATE_TRIAL,
    COLUMNS,
    TrialRecord,
    bennett_h,
    eta,
    read_results,
    render_csv,
    run_catalog_entry,
    run_config,
    run_experiment,
    wilson_interval,
    write_results,
)
from nbspectra.shared.harness import stats


def _record(**changes):
    values = dict(
        experiment="tail-rho-b",
        n=100,
        d=4.95,
        q=math.sqrt(4.95),
        kappa=1.0,
        epsilon=0.1,
        trial=AGGREGATE_TRIAL,
        seed=7,
        stat_name="tail_frequency",
        stat_value=0.25,
    )
    values.update(changes)
    return TrialRecord(**values)


def test_bennett_h_and_eta():
    """Test h(t) and eta at reference points."""
    assert bennett_h(0.0) == 0.0
    assert bennett_h(1.0) == pytest.approx(2 * math.log(2) - 1)
    assert bennett_h(-1.0) == 1.0
    with pytest.raises(ValidationError):
        bennett_h(-2.0)
    assert eta(4000, 8.0) == pytest.approx(0.36, abs=5e-3)


def test_wilson_interval():
    """Test the score interval at the edges and in the middle."""
    low, high = wilson_interval(0, 10)
    assert low == pytest.approx(0.0, abs=1e-12)
    assert high == pytest.approx(1.96**2 / (10 + 1.96**2), rel=1e-3)

    low, high = wilson_interval(5, 10)
    assert low < 0.5 < high
    assert low + high == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        wilson_interval(0, 0)


def test_fitted_constant_helpers():
    """Test the exponent, norm constants and reference scales."""
    assert stats.tail_exponent(0.5, 100, 2.0, 0.0) is None
    assert stats.tail_exponent(0.0, 100, 2.0, 0.5) is None
    c = stats.tail_exponent(1.0, 100, 2.0, 0.5)
    assert c == pytest.approx(3.0 / (2.0 * math.log(1.5)))

    assert stats.norm_constant(2.0, 0.5) == 0.0
    assert stats.norm_constant(1.9, 0.5) < 0
    assert stats.refined_constant(2.2, 1.0, 5.0) == pytest.approx(1.0)
    assert stats.sparse_reference(1.0) is None
    assert stats.sparse_reference(math.e) == pytest.approx(math.e / math.sqrt(2))
    assert stats.is_non_increasing([3.0, 2.0, 2.01], tol=0.02)
    assert not stats.is_non_increasing([1.0, 2.0])
    assert stats.quartiles([1.0, 2.0, 3.0, 4.0, 5.0]) == (2.0, 3.0, 4.0)
    assert stats.sample_std([4.0]) == 0.0


def test_records_round_trip(tmp_path):
    """Test that written CSV files read back to identical records."""
    records = [
        _record(),
        _record(trial=0, epsilon=None, stat_name="rho_b", stat_value=1 / 3),
        _record(n=None, d=None, q=None, kappa=None, stat_name="fitted_c_max"),
    ]
    path = write_results(records, tmp_path / "nested" / "out.csv")

    assert path.read_text().splitlines()[0] == ",".join(COLUMNS)
    assert read_results(path) == records


def test_records_reject_bad_input(tmp_path):
    """Test the finiteness check and the header check."""
    with pytest.raises(ValidationError):
        _record(stat_value=math.nan)
    with pytest.raises(ValidationError):
        _record(stat_value=math.inf)

    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValidationError):
        read_results(path)


TAIL_CONFIG = """
experiment = tail-rho-b
n = 40
d = 4, 8
epsilon = 0, 0.2, 0.5
trials = 5
master_seed = 99
"""


def test_tail_experiment_records():
    """Test the per-trial and aggregate rows of a small tail run."""
    result = run_experiment(parse_config(TAIL_CONFIG), threads=1)

    rhos = result.values("rho_b", aggregate=False)
    frequencies = result.values("tail_frequency", aggregate=True)
    assert len(rhos) == 10
    assert len(frequencies) == 6
    assert all(0 <= f <= 1 for f in frequencies)
    assert result.checks["epsilon_monotone"] is True
    for r in result.records:
        if r.n is not None:
            assert r.q == pytest.approx(math.sqrt(r.d))
        assert r.runtime_ms == 0.0
    assert result.summary()["records"] == len(result.records)


def test_runs_are_deterministic(tmp_path):
    """Test identical CSV output for repeated runs of one config."""
    cfg = parse_config(TAIL_CONFIG)
    first = run_config(cfg, tmp_path / "a.csv", threads=1)
    second = run_config(cfg, tmp_path / "b.csv", threads=1)

    assert render_csv(first.result) == render_csv(second.result)
    assert first.output.read_bytes() == second.output.read_bytes()
    assert first.passed
    assert first.golden_match is None


def test_thread_count_does_not_change_records():
    """Test that trial results do not depend on the thread pool size."""
    cfg = parse_config(TAIL_CONFIG)
    single = run_experiment(cfg, threads=1)
    pooled = run_experiment(cfg, threads=4)
    assert render_csv(single) == render_csv(pooled)


def test_master_seed_changes_records():
    """Test that a different master seed draws different graphs."""
    cfg = parse_config(TAIL_CONFIG)
    base = run_experiment(cfg, threads=1)
    other = run_experiment(cfg.with_overrides(master_seed=100), threads=1)
    assert base.values("rho_b") != other.values("rho_b")


def test_golden_comparison(tmp_path):
    """Test byte comparison against a golden CSV."""
    cfg = parse_config(TAIL_CONFIG)
    golden = tmp_path / "golden.csv"
    golden.write_text(render_csv(run_experiment(cfg, threads=1)))

    matched = run_config(cfg, tmp_path / "out.csv", threads=1, golden=golden)
    assert matched.golden_match is True

    golden.write_text("changed\n")
    mismatched = run_config(cfg, tmp_path / "out.csv", threads=1, golden=golden)
    assert mismatched.golden_match is False
    assert not mismatched.passed


def test_timing_is_opt_in():
    """Test that runtime_ms is recorded only with timing enabled."""
    cfg = parse_config(TAIL_CONFIG).with_overrides(timing=True, trials=2)
    result = run_experiment(cfg, threads=1)
    per_trial = [r for r in result.records if r.trial != AGGREGATE_TRIAL]
    assert any(r.runtime_ms > 0 for r in per_trial)


@pytest.mark.parametrize(
    "name, check",
    [
        ("tail-smoke", "epsilon_monotone"),
        ("tail-sbm-smoke", "epsilon_monotone"),
        ("norm-smoke", "norm_non_increasing_in_d"),
        ("moment-smoke", None),
        ("concentration-smoke", None),
    ],
)
def test_smoke_configs(tmp_path, name, check):
    """Test the quick shipped configs end to end."""
    outcome = run_catalog_entry(name, output=tmp_path / f"{name}.csv", threads=2)

    assert outcome.passed
    assert outcome.output.exists()
    assert read_results(outcome.output) == outcome.result.records
    if check is not None:
        assert outcome.result.checks[check] is True


def test_moment_smoke_fits_are_finite(tmp_path):
    """Test the fitted trace-moment constants of the moment smoke run."""
    outcome = run_catalog_entry("moment-smoke", output=tmp_path / "m.csv", threads=1)
    fits = outcome.result.values("c0_fit_l1") + outcome.result.values("c0_fit_l2")

    assert fits
    assert all(math.isfinite(c) and c >= 0 for c in fits)
    assert outcome.result.values("c0_fit_max") == [max(fits)]


def test_concentration_bennett_rows(tmp_path):
    """Test that every t gets its h(t) row in the concentration smoke run."""
    outcome = run_catalog_entry(
        "concentration-smoke", output=tmp_path / "c.csv", threads=1
    )
    rows = [r for r in outcome.result.records if r.stat_name == "bennett_h"]

    assert {r.epsilon for r in rows} == {0.5, 1.0}
    for r in rows:
        assert r.stat_value == pytest.approx(bennett_h(r.epsilon))


@pytest.mark.slow
@pytest.mark.parametrize("name", ["crossover-smoke", "directed-smoke"])
def test_slower_smoke_configs(tmp_path, name):
    """Test the smoke configs that need dense or many spectra."""
    outcome = run_catalog_entry(name, output=tmp_path / f"{name}.csv")
    assert outcome.passed
    assert outcome.result.records


@pytest.mark.slow
def test_directed_smoke_single_outlier(tmp_path):
    """Test a single Perron outlier near d for directed ER at d = 20."""
    outcome = run_catalog_entry("directed-smoke", output=tmp_path / "d.csv")
    fractions = outcome.result.values("single_outlier_fraction")
    assert fractions and max(fractions) == 1.0


def test_catalog_lists_smoke_configs():
    """Test that the runner and the catalog agree on names."""
    names = get_catalog().names()
    assert "tail-smoke" in names
    assert "moment-smoke" in names


def test_golden_is_recorded_once(tmp_path):
    """Test that a missing golden is written only when asked, then compared."""
    cfg = parse_config(TAIL_CONFIG)
    golden = tmp_path / "goldens" / "tail.csv"

    plain = run_config(cfg, tmp_path / "a.csv", threads=1, golden=golden)
    assert plain.golden is None
    assert plain.golden_match is None
    assert not golden.exists()

    recorded = run_config(
        cfg, tmp_path / "b.csv", threads=1, golden=golden, record_golden=True
    )
    assert recorded.golden == golden
    assert recorded.golden_match is None
    assert golden.read_bytes() == recorded.output.read_bytes()

    again = run_config(
        cfg, tmp_path / "c.csv", threads=1, golden=golden, record_golden=True
    )
    assert again.golden_match is True


def _aggregates(result, stat_name, **fields):
    return [
        r.stat_value
        for r in result.records
        if r.stat_name == stat_name
        and r.trial == AGGREGATE_TRIAL
        and all(getattr(r, k) == v for k, v in fields.items())
    ]


def _tail_bracket(result):
    frequencies = _aggregates(result, "tail_frequency", n=2000, epsilon=0.5)
    assert frequencies and max(frequencies) < 0.05
    assert result.checks["epsilon_monotone"] is True


def _crossover_bracket(result):
    means = _aggregates(result, "mean_norm_h")
    assert means[0] > 2.5
    assert 2.0 <= means[-1] <= 2.4
    assert result.checks["norm_non_increasing_in_d"] is True


def _concentration_bracket(result):
    assert result.values("q_std_norm_h_max")[0] <= 2.0
    constants = _aggregates(result, "bennett_constant")
    assert constants and max(constants) <= 10.0


def _directed_bracket(result):
    assert min(_aggregates(result, "rho_within_fraction")) >= 0.95
    assert result.checks["single_outlier"] is True


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, bracket",
    [
        ("tail-rho-b", _tail_bracket),
        ("crossover", _crossover_bracket),
        ("concentration", _concentration_bracket),
        ("directed-outlier", _directed_bracket),
    ],
)
def test_full_configs_reproduce_and_land_in_range(tmp_path, name, bracket):
    """Test the full shipped configs against their goldens and expected ranges."""
    entry = get_catalog().get(name)
    cfg = entry.load()
    golden = tmp_path / f"{name}.csv"

    first = run_config(cfg, tmp_path / "first.csv", golden=golden, record_golden=True)
    second = run_config(cfg, tmp_path / "second.csv", golden=golden)

    assert second.golden_match is True
    if entry.golden is not None and entry.golden.exists():
        assert first.output.read_bytes() == entry.golden.read_bytes()
    bracket(first.result)
