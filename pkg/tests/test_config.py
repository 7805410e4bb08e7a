"""Test experiment configs, the shipped catalog and runtime settings."""

import math

import pytest

from nbspectra.shared.config import (
    ExperimentCatalog,
    ExperimentKind,
    GridMode,
    get_catalog,
    get_settings,
    load_config,
    parse_config,
    parse_yaml_config,
    reset_catalog,
    reset_settings,
)
from nbspectra.shared.errors import ConfigError, NotFoundError


def test_parse_flat_config():
    """Test the key = value format with comments and aliases."""
    cfg = parse_config(
        "# tail sweep\n"
        "experiment = tail-rho-b\n"
        "n = 200, 400   # two sizes\n"
        "d = 8\n"
        "epsilon = 0.1, 0.3\n"
        "seed = 42\n"
        "timing = yes\n"
    )

    assert cfg.experiment is ExperimentKind.TAIL
    assert cfg.ensemble == "hermitian-er"
    assert cfg.n == (200, 400)
    assert cfg.d == (8.0,)
    assert cfg.epsilon == (0.1, 0.3)
    assert cfg.master_seed == 42
    assert cfg.timing is True
    assert cfg.trials == 10
    assert cfg.t == (0.25, 0.5, 1.0)


def test_empty_config_is_missing_experiment():
    """Test that blank input names the missing key."""
    with pytest.raises(ConfigError, match="missing experiment") as excinfo:
        parse_config("")
    assert excinfo.value.line is None
    with pytest.raises(ConfigError, match="missing experiment"):
        parse_config("# only a comment\n\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("experiment = tail-rho-b\nn = 100\nbogus = 1\n", 3),
        ("experiment = tail-rho-b\nn = 100\nn = 200\n", 3),
        ("experiment = norm-curve\n\nn = ten\n", 3),
        ("experiment = norm-curve\nn = 100\nd = -1\n", 3),
        ("experiment = tail-rho-b\nn = 100\nd = 4\nepsilon = -0.1\n", 4),
        ("experiment = norm-curve\nn = 1\nd = 4\n", 2),
        ("experiment = norm-curve\nn = 100\nd = 4\ntrials = 0\n", 4),
        ("experiment = norm-curve\njust words\n", 2),
        ("experiment = nothing\n", 1),
        ("experiment = norm-curve\nn = 100\nd = 4\nmaster_seed = -1\n", 4),
    ],
)
def test_config_errors_carry_line_numbers(text, line):
    """Test that each error points at the offending line."""
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")
    assert excinfo.value.to_dict()["line"] == line


def test_required_keys_per_experiment():
    """Test the grid keys each experiment needs."""
    with pytest.raises(ConfigError, match="needs 'epsilon'"):
        parse_config("experiment = tail-rho-b\nn = 100\nd = 4\n")
    with pytest.raises(ConfigError, match="needs 'ell'"):
        parse_config("experiment = moment-envelope\nn = 30\nd = 3\n")
    cfg = parse_config("experiment = crossover\nn = 300\n")
    assert cfg.ensemble == "hermitian-er"


def test_ensemble_defaults_and_restrictions():
    """Test per-experiment ensemble defaults and allowed kinds."""
    directed = parse_config(
        "experiment = directed-outlier\nn = 100\nd = 10\nepsilon = 0.5\n"
    )
    assert directed.ensemble == "directed-er"
    moment = parse_config("experiment = moment-envelope\nn = 30\nd = 3\nell = 2\n")
    assert moment.ensemble == "rademacher"

    with pytest.raises(ConfigError) as excinfo:
        parse_config("experiment = crossover\nensemble = sbm\nn = 100\n")
    assert excinfo.value.line == 2


def test_sbm_config():
    """Test block validation and the derived n."""
    cfg = parse_config(
        "experiment = norm-curve\n"
        "ensemble = sbm\n"
        "blocks = 30, 20\n"
        "block_probs = 0.2, 0.05; 0.05, 0.3\n"
    )
    assert cfg.n == (50,)
    assert cfg.block_probs == ((0.2, 0.05), (0.05, 0.3))
    spec = cfg.build_ensemble(50)
    assert spec.n == 50

    bad = [
        "blocks = 30, 20\nblock_probs = 0.2, 0.05; 0.1, 0.3\n",
        "blocks = 30, 20\nblock_probs = 0.2, 0.05\n",
        "blocks = 30, 20\nblock_probs = 1.2, 0.05; 0.05, 0.3\n",
        "blocks = 30, 20\n",
        "blocks = 30, 20\nblock_probs = 0.2, 0.05; 0.05, 0.3\nn = 60\n",
        "blocks = 30, 20\nblock_probs = 0.2, 0.05; 0.05, 0.3\nd = 4\n",
    ]
    for body in bad:
        with pytest.raises(ConfigError):
            parse_config("experiment = norm-curve\nensemble = sbm\n" + body)


def test_degree_grids():
    """Test explicit degrees, log multiples and the geometric fallback."""
    explicit = parse_config("experiment = crossover\nn = 100\nd = 2, 4\n")
    assert explicit.d_values(100) == (2.0, 4.0)

    multiples = parse_config(
        "experiment = crossover\nn = 100\nd_log_multiples = 1, 2\n"
    )
    assert multiples.d_values(100) == pytest.approx(
        (math.log(100), 2 * math.log(100))
    )

    grid = parse_config("experiment = crossover\nn = 100\nd_grid_points = 4\n")
    values = grid.d_values(100)
    assert len(values) == 4
    assert values[0] == pytest.approx(1.0)
    assert values[-1] == pytest.approx(10 * math.log(100))

    single = parse_config("experiment = crossover\nn = 100\nd_grid_points = 1\n")
    assert single.d_values(100) == (10 * math.log(100),)


def test_overrides():
    """Test CLI overrides, ignored Nones and the trials check."""
    cfg = parse_config("experiment = crossover\nn = 100\n")
    changed = cfg.with_overrides(trials=3, master_seed=None)

    assert changed.trials == 3
    assert changed.master_seed == cfg.master_seed
    with pytest.raises(ConfigError):
        cfg.with_overrides(trials=0)
    assert changed.to_dict()["experiment"] == "crossover"


def test_yaml_config():
    """Test the YAML form and its error lines."""
    cfg = parse_yaml_config(
        "experiment: norm-curve\nn: [100, 200]\nd: 4\ntrials: 2\n", name="yaml-run"
    )
    assert cfg.n == (100, 200)
    assert cfg.d == (4.0,)
    assert cfg.name == "yaml-run"

    with pytest.raises(ConfigError) as excinfo:
        parse_yaml_config("experiment: norm-curve\nn: 100\nn: 200\n")
    assert excinfo.value.line == 3
    with pytest.raises(ConfigError) as excinfo:
        parse_yaml_config("experiment: norm-curve\nn: 100\nd:\n")
    assert excinfo.value.line == 3
    with pytest.raises(ConfigError, match="missing experiment"):
        parse_yaml_config("")
    with pytest.raises(ConfigError):
        parse_yaml_config("- 1\n- 2\n")


def test_load_config_from_disk(tmp_path):
    """Test suffix dispatch and unreadable files."""
    flat = tmp_path / "sweep.conf"
    flat.write_text("experiment = crossover\nn = 100\n")
    assert load_config(flat).name == "sweep"

    yml = tmp_path / "other.yaml"
    yml.write_text("experiment: crossover\nn: 100\n")
    assert load_config(yml).experiment is ExperimentKind.CROSSOVER

    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.conf")
    json_file = tmp_path / "x.json"
    json_file.write_text("{}")
    with pytest.raises(ConfigError):
        load_config(json_file)


def test_shipped_catalog():
    """Test that every shipped config is listed and valid."""
    catalog = get_catalog()
    names = catalog.names()

    assert len(names) == 13
    for name in names:
        entry = catalog.get(name)
        assert entry.source == "builtin"
        assert entry.golden == entry.path.parent / "goldens" / f"{name}.csv"
        assert entry.load().trials >= 1
    assert catalog.get("crossover-smoke").load().d_grid_points == 4

    with pytest.raises(NotFoundError) as excinfo:
        catalog.get("nope")
    assert "tail-smoke" in excinfo.value.suggestions


def test_external_config_directory(tmp_path, monkeypatch):
    """Test that NBSPECTRA_CONFIG_PATH extends and shadows the catalog."""
    (tmp_path / "mine.conf").write_text("experiment = crossover\nn = 100\n")
    (tmp_path / "tail-smoke.conf").write_text(
        "experiment = tail-rho-b\nn = 30\nd = 3\nepsilon = 0.1\ntrials = 2\n"
    )
    monkeypatch.setenv("NBSPECTRA_CONFIG_PATH", str(tmp_path))
    reset_settings()
    reset_catalog()

    catalog = get_catalog()
    assert catalog.get("mine").source == "external"
    assert catalog.get("tail-smoke").source == "external"
    assert catalog.get("tail-smoke").load().trials == 2
    assert len(catalog.names()) == 14


def test_missing_external_directory_is_ignored(tmp_path):
    """Test that a bad external path falls back to the shipped configs."""
    catalog = ExperimentCatalog(external_dir=tmp_path / "absent")
    assert catalog.external_dir is None
    assert len(catalog.list()) == 13


def test_settings_from_environment(monkeypatch):
    """Test thread resolution order and the integer checks."""
    monkeypatch.setenv("NBSPECTRA_THREADS", "3")
    monkeypatch.setenv("NBSPECTRA_DENSE_LIMIT", "500")
    reset_settings()
    settings = get_settings()

    assert settings.threads == 3
    assert settings.dense_limit == 500
    assert settings.resolve_threads(cli_value=5, config_value=2) == 5
    assert settings.resolve_threads(config_value=2) == 3

    monkeypatch.delenv("NBSPECTRA_THREADS")
    reset_settings()
    assert get_settings().resolve_threads(config_value=2) == 2

    monkeypatch.setenv("NBSPECTRA_THREADS", "zero")
    reset_settings()
    with pytest.raises(ConfigError):
        get_settings()
    monkeypatch.setenv("NBSPECTRA_THREADS", "0")
    reset_settings()
    with pytest.raises(ConfigError):
        get_settings()


def test_paired_grid():
    """Test that a paired grid gives one degree per size."""
    cfg = parse_config(
        "experiment = concentration\ngrid = paired\nn = 100, 200\nd = 5, 10\n"
    )

    assert cfg.grid is GridMode.PAIRED
    assert cfg.d_values(100) == (5.0,)
    assert cfg.d_values(200) == (10.0,)
    assert cfg.to_dict()["grid"] == "paired"

    product = parse_config("experiment = concentration\nn = 100, 200\nd = 5, 10\n")
    assert product.grid is GridMode.PRODUCT
    assert product.d_values(100) == (5.0, 10.0)


@pytest.mark.parametrize(
    "text, line",
    [
        ("experiment = concentration\ngrid = paired\nn = 100, 200\nd = 5\n", 4),
        ("experiment = concentration\ngrid = paired\nn = 100, 100\nd = 5, 10\n", 3),
        ("experiment = crossover\ngrid = paired\nn = 100\n", 2),
        ("experiment = crossover\ngrid = zipped\nn = 100\n", 2),
    ],
)
def test_paired_grid_errors(text, line):
    """Test the line reported for inconsistent paired grids."""
    with pytest.raises(ConfigError) as excinfo:
        parse_config(text)
    assert excinfo.value.line == line


def test_shipped_concentration_grid():
    """Test that the concentration config runs d = n / 40 at three sizes."""
    cfg = get_catalog().get("concentration").load()

    assert cfg.grid is GridMode.PAIRED
    assert [(n, cfg.d_values(n)) for n in cfg.n] == [
        (1000, (25.0,)),
        (2000, (50.0,)),
        (4000, (100.0,)),
    ]
