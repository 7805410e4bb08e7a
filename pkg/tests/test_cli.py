"""Test the command-line interface and its exit codes."""

import json
import math

import pytest

from nbspectra.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, build_parser, run
from nbspectra.shared.harness import read_results


def _run(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_rho_b_named_graph(capsys):
    """Test rho(B) of K4 through the CLI."""
    code, response = _run(capsys, "rho-b", "--graph", "k4")

    assert code == EXIT_OK
    assert response["data"]["radius"]["rho"] == pytest.approx(2.0, abs=1e-6)
    assert response["metadata"]["tool"] == "rho-b"
    assert response["suggestions"][0]["command"] == "ib-check"


def test_rho_b_from_ensemble(capsys):
    """Test a seeded ER draw as the matrix source."""
    argv = ("rho-b", "--ensemble", "hermitian-er", "-n", "50", "-d", "5", "--seed", "8")
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)

    assert first[0] == EXIT_OK
    assert first[1]["data"]["radius"]["rho"] == second[1]["data"]["radius"]["rho"]


def test_sample_writes_matrix(capsys, tmp_path):
    """Test the sample command with a Matrix Market output."""
    out = tmp_path / "h.mtx"
    argv = [
        "sample",
        "--ensemble",
        "sbm",
        "--blocks",
        "20,20",
        "--block-probs",
        "0.3,0.05;0.05,0.3",
        "--seed",
        "2",
        "--out",
        str(out),
    ]
    code, response = _run(capsys, *argv)

    assert code == EXIT_OK
    assert out.exists()
    assert response["data"]["seed"] == 2

    code, response = _run(capsys, "norm-h", "--matrix", str(out))
    assert code == EXIT_OK
    assert response["data"]["bound"]["satisfied"] is True


def test_trace_moment_command(capsys):
    """Test the exact trace of the half-weight triangle."""
    weight = str(1 / math.sqrt(2))
    code, response = _run(
        capsys, "trace-moment", "--graph", "triangle", "--weight", weight, "--ell", "1"
    )
    assert code == EXIT_OK
    assert response["data"]["moment"]["value"] == pytest.approx(6.0)


def test_ib_commands(capsys):
    """Test the regular factorization and the full check."""
    code, response = _run(capsys, "ib-regular", "petersen")
    assert code == EXIT_OK
    assert response["data"]["passed"] is True

    code, response = _run(capsys, "ib-regular", "path4")
    assert code == EXIT_FAILED
    assert response["metadata"]["status"] == "error"

    code, response = _run(capsys, "ib-check", "--graph", "triangle", "--weight", "0.5")
    assert code == EXIT_OK
    assert response["data"]["psd"]["applicable"] is True


def test_walks_commands(capsys):
    """Test reduction, enumeration, sweeps and moments."""
    code, response = _run(capsys, "walks", "reduce", "figure1")
    assert code == EXIT_OK
    assert response["data"]["reduction"]["gamma"] == 6

    code, response = _run(capsys, "walks", "enumerate", "-n", "2", "--ell", "1")
    assert response["data"]["c0"] == 2

    code, response = _run(
        capsys, "walks", "verify", "-n", "3", "--ell", "2", "--mode", "directed-pair"
    )
    assert code == EXIT_OK
    assert response["data"]["passed"] is True

    q = str(math.sqrt(2))
    code, response = _run(
        capsys, "walks", "moments", "--graph", "triangle", "-q", q, "--ell", "2"
    )
    assert code == EXIT_OK
    assert response["data"]["passed"] is True


def test_bad_values_exit_with_failure(capsys):
    """Test unknown enum values and missing sources."""
    code, response = _run(
        capsys, "walks", "enumerate", "-n", "2", "--ell", "1", "--mode", "sideways"
    )
    assert code == EXIT_FAILED
    assert response["data"]["details"]["type"] == "ValueError"

    code, response = _run(capsys, "rho-b")
    assert code == EXIT_FAILED
    assert response["data"]["details"]["type"] == "ValidationError"


def test_experiment_list_and_run(capsys, tmp_path):
    """Test the catalog listing and a shipped run with overrides."""
    code, response = _run(capsys, "experiment", "list")
    assert code == EXIT_OK
    assert len(response["data"]["configs"]) == 13

    out = tmp_path / "tail.csv"
    argv = ["experiment", "run", "tail-smoke", "--trials", "2", "--out", str(out)]
    code, response = _run(capsys, *argv, "--threads", "2")
    assert code == EXIT_OK
    assert response["data"]["records"] == len(read_results(out))
    assert response["data"]["checks"]["epsilon_monotone"] is True


def test_bad_config_exits_with_config_code(capsys, tmp_path):
    """Test that config errors map to exit code 2 with the line number."""
    config = tmp_path / "broken.conf"
    config.write_text("experiment = norm-curve\nn = 100\nd = 4\nwidth = 3\n")
    code, response = _run(capsys, "experiment", "run", str(config))

    assert code == EXIT_CONFIG
    assert response["data"]["details"]["line"] == 4


def test_bad_environment_exits_with_config_code(capsys, monkeypatch):
    """Test that a malformed NBSPECTRA_THREADS is reported before running."""
    monkeypatch.setenv("NBSPECTRA_THREADS", "many")
    code, response = _run(capsys, "experiment", "list")

    assert code == EXIT_CONFIG
    assert response["data"]["details"]["type"] == "ConfigError"


def test_parser_requires_a_command():
    """Test argparse usage errors."""
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["trace-moment", "--graph", "k4"])


def test_record_golden_flag():
    """Test that golden recording is opt-in on experiment run."""
    parser = build_parser()
    assert parser.parse_args(["experiment", "run", "tail-smoke"]).record_golden is False
    args = parser.parse_args(["experiment", "run", "tail-smoke", "--record-golden"])
    assert args.record_golden is True
