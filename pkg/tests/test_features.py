"""Test the feature handlers and their tool registrations."""

import math

import numpy as np
import pytest
from fastmcp import FastMCP

from nbspectra.features.experiments import (
    ExperimentsHandler,
    register_experiments_tools,
)
from nbspectra.features.ihara_bass import IharaBassHandler, register_ihara_bass_tools
from nbspectra.features.ihara_bass import handler as ib_handler
from nbspectra.features.sampling import SamplingHandler, register_sampling_tools
from nbspectra.features.spectra import SpectraHandler, register_spectra_tools
from nbspectra.features.walks import WalksHandler, register_walks_tools
from nbspectra.server import create_server, load_features
from nbspectra.shared.errors import GuardError, NotFoundError, ValidationError
from nbspectra.shared.instance import get_instance_config, should_load_feature
from nbspectra.shared.models import named_matrix, save_matrix
from nbspectra.shared.walks import WalkPair


class ToolRecorder:
    """Stands in for FastMCP and keeps the registered coroutines by name."""

    def __init__(self):
        self.tools = {}

    def tool(self, name):
        def register(fn):
            self.tools[name] = fn
            return fn

        return register


def _register(register):
    recorder = ToolRecorder()
    meta = register(recorder)
    assert [m["name"] for m in meta] == list(recorder.tools)
    return recorder.tools


def test_sampling_build_spec():
    """Test every ensemble kind and the missing-parameter errors."""
    handler = SamplingHandler()

    assert handler.build_spec("hermitian-er", n=50, d=5.0).n == 50
    assert not handler.build_spec("directed-er", n=20, d=3.0).hermitian
    probs = [[0.3, 0.1], [0.1, 0.3]]
    sbm = handler.build_spec("sbm", blocks=[10, 10], block_probs=probs)
    assert sbm.n == 20
    assert handler.build_spec("rademacher", q=2.0, graph="petersen").n == 10
    assert "custom-profile" in handler.ensemble_kinds()

    with pytest.raises(ValidationError):
        handler.build_spec("hermitian-er", n=50)
    with pytest.raises(ValidationError):
        handler.build_spec("sbm", blocks=[10])
    with pytest.raises(ValidationError):
        handler.build_spec("rademacher", graph="k4")
    with pytest.raises(ValidationError):
        handler.build_spec("rademacher", q=2.0)
    with pytest.raises(ValidationError):
        handler.build_spec("custom-profile", q=2.0)
    with pytest.raises(ValueError):
        handler.build_spec("wigner", n=5, d=1.0)


def test_sampling_sample_and_save(tmp_path):
    """Test one seeded draw, its report and the Matrix Market output."""
    handler = SamplingHandler()
    spec = handler.build_spec("hermitian-er", n=60, d=6.0)
    out = tmp_path / "h.mtx"
    result = handler.sample(spec, seed=4, out=out)

    assert result["seed"] == 4
    assert result["edges"] > 0
    assert out.exists()
    assert result["output"] == str(out)
    assert "assumptions" in result
    again = handler.sample(spec, seed=4)
    assert again["norms"] == result["norms"]


def test_custom_profile_from_file(tmp_path):
    """Test the custom-profile kind read from a Matrix Market file."""
    profile = tmp_path / "profile.mtx"
    save_matrix(named_matrix("k4", weight=0.25), profile)

    spec = SamplingHandler().build_spec("custom-profile", q=2.0, profile_path=profile)
    assert spec.n == 4


def test_resolve_matrix_sources(tmp_path):
    """Test matrix files, named graphs and ensemble draws."""
    handler = SamplingHandler()
    path = tmp_path / "k4.mtx"
    save_matrix(named_matrix("k4"), path)

    assert handler.resolve_matrix(matrix=path).nnz == 12
    assert handler.resolve_matrix(graph="triangle", weight=0.5).nnz == 6
    drawn = handler.resolve_matrix(ensemble="hermitian-er", n=30, d=4.0, seed=2)
    assert drawn.n == 30
    with pytest.raises(ValidationError):
        handler.resolve_matrix()
    with pytest.raises(NotFoundError):
        handler.resolve_matrix(graph="dodecahedron-ish")


def test_spectra_handler():
    """Test rho(B), the norm bound and the trace estimate on K4."""
    handler = SpectraHandler()
    H = named_matrix("k4")
    cfg = handler.config(seed=1)

    rho = handler.rho_b(H, cfg)
    assert rho["radius"]["rho"] == pytest.approx(2.0, abs=1e-6)
    norms = handler.norm_h(H, cfg)
    assert norms["bound"]["satisfied"] is True
    trace = handler.trace(H, 1, "exact-small", cfg)
    assert trace["moment"]["value"] == pytest.approx(36.0)
    assert trace["gelfand_bound"] == pytest.approx(6.0)


def test_ihara_bass_handler():
    """Test the full check and the regular-graph comparison."""
    handler = IharaBassHandler()

    check = handler.check(named_matrix("k4"))
    assert check["equivalence"]["passed"]
    assert check["recovery"]["recovered"] > 0
    assert check["psd"]["applicable"] is False

    small = handler.check(named_matrix("triangle", weight=0.5))
    assert small["psd"]["applicable"] is True
    assert small["psd"]["passed"] is True

    regular = handler.regular("petersen")
    assert regular["degree"] == 3
    assert regular["rho_B"] == pytest.approx(2.0)
    assert regular["passed"] is True
    with pytest.raises(ValidationError):
        handler.regular("path4")


def test_recover_all_counts_bad_null_vectors_as_failures(monkeypatch):
    """Test that only guard refusals are skipped during eigenvector recovery."""
    handler = IharaBassHandler()
    H = named_matrix("k4")
    clean = handler.recover_all(H)
    assert clean["failed"] == []
    assert clean["passed"] is True
    assert clean["recovered"] + clean["skipped"] == 12

    monkeypatch.setattr(
        ib_handler,
        "null_vector",
        lambda H, lam, guard=None: (np.eye(H.n, dtype=complex)[0], 1.0),
    )
    broken = handler.recover_all(H)
    assert broken["recovered"] == 0
    assert len(broken["failed"]) == 12 - clean["skipped"]
    assert broken["passed"] is False
    assert handler.check(H)["passed"] is False

    def refuse(H, lam, guard=None):
        raise GuardError("refused", pair=(0, 1), value=0.0)

    monkeypatch.setattr(ib_handler, "null_vector", refuse)
    refused = handler.recover_all(H)
    assert refused["failed"] == []
    assert refused["skipped"] == 12
    assert refused["passed"] is True


def test_walks_handler():
    """Test walk parsing, enumeration, reduction, sweeps and moments."""
    handler = WalksHandler()

    assert isinstance(handler.parse_walk("figure2"), WalkPair)
    assert isinstance(handler.parse_walk("1 2 | 1 2"), WalkPair)
    counts = handler.enumerate(2, 1)
    assert (counts["c_tilde"], counts["c"], counts["c0"]) == (4, 4, 2)

    reduced = handler.reduce("3,5,3")
    assert reduced["path"] == "1,2,1"
    assert reduced["reduction"]["gamma"] == 2

    assert handler.verify(3, 2)["passed"] is True
    sampled = handler.verify(6, 4, samples=5, seed=1)
    assert sampled["sampled"] is True

    spec = handler.moment_spec(graph="triangle", q=math.sqrt(2))
    moments = handler.moments(spec, 1)
    assert moments["target"] == "B"
    assert moments["exact"] == "6"
    assert moments["passed"] is True
    directed = handler.moments(handler.moment_spec(n=3, d=1.0), 1)
    assert directed["target"] == "H"
    assert directed["passed"] is True
    with pytest.raises(ValidationError):
        handler.moment_spec(graph="triangle")
    with pytest.raises(ValidationError):
        handler.moment_spec()


def test_experiments_handler(tmp_path):
    """Test listing and running by name and by path."""
    handler = ExperimentsHandler()
    assert len(handler.list()) == 13

    outcome = handler.run("moment-smoke", output=str(tmp_path / "m.csv"), trials=1)
    assert outcome.result.config.trials == 1
    assert outcome.output.exists()

    config = tmp_path / "mine.conf"
    config.write_text(
        "experiment = tail-rho-b\nn = 30\nd = 3\nepsilon = 0.1\ntrials = 2\n"
    )
    outcome = handler.run(str(config), output=str(tmp_path / "t.csv"))
    assert outcome.result.config.name == "mine"
    with pytest.raises(NotFoundError):
        handler.run("no-such-config")


@pytest.mark.asyncio
async def test_sampling_and_spectra_tools():
    """Test success and error envelopes of the matrix tools."""
    tools = _register(register_sampling_tools)
    tools.update(_register(register_spectra_tools))

    sampled = await tools["sample"](ensemble="hermitian-er", n=40, d=4.0, seed=3)
    assert sampled["metadata"]["status"] == "success"
    assert sampled["suggestions"][0]["command"] == "rho-b"

    rho = await tools["rho_b"](graph="k5")
    assert rho["data"]["radius"]["rho"] == pytest.approx(3.0, abs=1e-6)

    missing = await tools["norm_h"]()
    assert missing["metadata"]["status"] == "error"
    assert missing["data"]["details"]["type"] == "ValidationError"

    trace = await tools["trace_moment"](ell=2, graph="cycle6")
    assert trace["data"]["moment"]["value"] == pytest.approx(12.0)


@pytest.mark.asyncio
async def test_ihara_bass_and_walks_tools():
    """Test the determinant and walk tools through their envelopes."""
    tools = _register(register_ihara_bass_tools)
    tools.update(_register(register_walks_tools))

    regular = await tools["ib_regular"](graph="k4")
    assert regular["data"]["passed"] is True
    irregular = await tools["ib_regular"](graph="path4")
    assert irregular["metadata"]["status"] == "error"

    reduced = await tools["walks_reduce"](path="figure1")
    assert reduced["data"]["reduction"]["gamma"] == 6
    counted = await tools["walks_enumerate"](n=3, ell=1)
    assert counted["data"]["c0"] == 2
    swept = await tools["walks_verify"](n=3, ell=2, mode="directed-pair")
    assert swept["message"] == "all reductions pass"
    moments = await tools["walks_moments"](ell=1, graph="k4", q=math.sqrt(3))
    assert moments["data"]["exact"] == "12"
    bad = await tools["walks_reduce"](path="1 2")
    assert bad["metadata"]["status"] == "error"


@pytest.mark.asyncio
async def test_experiment_tools(tmp_path):
    """Test the catalog listing and an unknown config."""
    tools = _register(register_experiments_tools)

    listed = await tools["experiment_list"]()
    assert len(listed["data"]["configs"]) == 13

    run = await tools["experiment_run"](
        config="tail-smoke", output=str(tmp_path / "tail.csv"), trials=2
    )
    assert run["metadata"]["status"] == "success"
    assert run["data"]["golden_match"] is None

    unknown = await tools["experiment_run"](config="nope")
    assert unknown["metadata"]["status"] == "error"
    assert "tail-smoke" in unknown["data"]["details"]["suggestions"]


def test_feature_selection(monkeypatch):
    """Test NBSPECTRA_FEATURES narrowing and unknown names."""
    assert should_load_feature("walks")
    monkeypatch.setenv("NBSPECTRA_FEATURES", "walks, spectra, plotting")

    assert get_instance_config()["features"] == ["spectra", "walks"]
    recorder = ToolRecorder()
    loaded = load_features(recorder)
    assert loaded == [("spectra", 3), ("walks", 4)]
    assert "sample" not in recorder.tools


def test_create_server():
    """Test that the server builds with every feature."""
    assert isinstance(create_server(), FastMCP)
