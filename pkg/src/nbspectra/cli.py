"""
Command-line interface

Every command prints one JSON response on stdout; logs go to stderr.
Exit codes: 0 success, 1 failed check or error, 2 config error.
"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .shared.config import get_settings
from .shared.errors import ConfigError, NbSpectraError
from .shared.response import ResponseBuilder

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _matrix_rows(text: str) -> List[List[float]]:
    """'0.1,0.02;0.02,0.1' -> [[0.1, 0.02], [0.02, 0.1]]"""
    return [
        [float(v) for v in row.split(",")] for row in text.split(";") if row.strip()
    ]


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="master seed")
    parser.add_argument("--trials", type=int, default=None, help="trial count")
    parser.add_argument("--out", default=None, help="output file")
    parser.add_argument("--threads", type=int, default=None, help="worker threads")
    parser.add_argument("--tol", type=float, default=None, help="solver tolerance")


def _matrix_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_argument_group("matrix source")
    source.add_argument("--matrix", help="Matrix Market file holding H")
    source.add_argument("--graph", help="named graph (triangle, k4, k5, petersen, ...)")
    source.add_argument(
        "--weight", type=float, default=1.0, help="edge weight for --graph"
    )
    source.add_argument("--ensemble", help="draw H from this ensemble instead")
    source.add_argument("-n", type=int, dest="n", help="dimension")
    source.add_argument("-d", type=float, dest="d", help="expected degree")
    source.add_argument("-q", type=float, dest="q", help="sparsity scale")
    source.add_argument("--blocks", type=_int_list, help="SBM block sizes, e.g. 50,50")
    source.add_argument(
        "--block-probs", type=_matrix_rows, help="SBM probabilities, rows split by ';'"
    )
    source.add_argument("--profile", help="variance profile file for custom-profile")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbspectra",
        description="Nonbacktracking spectra of sparse random matrices",
    )
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    sample = commands.add_parser("sample", help="draw one seeded realization")
    _common(sample)
    _matrix_source(sample)
    sample.add_argument("--trial", type=int, default=0, help="trial index of the draw")

    for name, text in (
        ("rho-b", "spectral radius of the nonbacktracking operator"),
        ("norm-h", "norms of H and the bound in terms of rho(B)"),
        ("ib-check", "Ihara-Bass determinant, eigenvector recovery and PSD gap"),
    ):
        command = commands.add_parser(name, help=text)
        _common(command)
        _matrix_source(command)
    trace = commands.add_parser("trace-moment", help="tr B^l B^{*l} of one matrix")
    _common(trace)
    _matrix_source(trace)
    trace.add_argument("--ell", type=int, required=True)
    trace.add_argument(
        "--mode", default="exact-small", help="exact-small or stochastic"
    )
    ib_regular = commands.add_parser(
        "ib-regular", help="spectrum of B for a regular graph against its factorization"
    )
    ib_regular.add_argument("graph")

    walks = commands.add_parser("walks", help="walk combinatorics")
    walk_commands = walks.add_subparsers(dest="walks_command", required=True)
    for name, text in (
        ("enumerate", "count the path sets and list normal paths"),
        ("verify", "sweep the reduction properties over normal paths"),
    ):
        command = walk_commands.add_parser(name, help=text)
        _common(command)
        command.add_argument("-n", type=int, dest="n", required=True)
        command.add_argument("--ell", type=int, required=True)
        command.add_argument(
            "--mode", default="hermitian", help="hermitian or directed-pair"
        )
        if name == "enumerate":
            command.add_argument("--show", type=int, default=10)
        else:
            command.add_argument("--samples", type=int, default=None)
    reduce = walk_commands.add_parser("reduce", help="reduce one path or pair")
    reduce.add_argument("walk", help="fixture name, '1,2,1' or '1,2 | 1,2'")
    reduce.add_argument("--raw", action="store_true", help="skip normalization")
    moments = walk_commands.add_parser(
        "moments", help="path sum against the exact moment"
    )
    _common(moments)
    moments.add_argument("--graph")
    moments.add_argument("-q", type=float, dest="q")
    moments.add_argument("-n", type=int, dest="n")
    moments.add_argument("-d", type=float, dest="d")
    moments.add_argument("--ell", type=int, required=True)
    moments.add_argument("--target", default=None, help="B or H")

    experiment = commands.add_parser("experiment", help="Monte Carlo experiments")
    experiment_commands = experiment.add_subparsers(
        dest="experiment_command", required=True
    )
    run = experiment_commands.add_parser(
        "run", help="run a config file or shipped config"
    )
    _common(run)
    run.add_argument("config", help="config name or path")
    run.add_argument(
        "--record-golden",
        action="store_true",
        help="write the golden CSV of a shipped config when it is missing",
    )
    experiment_commands.add_parser("list", help="list shipped configs")

    commands.add_parser("serve", help="run the tool server on stdio")
    return parser


def _matrix(args: argparse.Namespace):
    from .features.sampling.handler import SamplingHandler

    return SamplingHandler().resolve_matrix(
        matrix=args.matrix,
        graph=args.graph,
        weight=args.weight,
        ensemble=args.ensemble,
        seed=args.seed or 0,
        n=args.n,
        d=args.d,
        q=args.q,
        blocks=args.blocks,
        block_probs=args.block_probs,
        profile_path=args.profile,
    )


# Each command returns (tool name, data, passed)
Outcome = Tuple[str, Any, bool]


def _cmd_sample(args: argparse.Namespace) -> Outcome:
    from .features.sampling.handler import SamplingHandler

    handler = SamplingHandler()
    spec = handler.build_spec(
        args.ensemble or "hermitian-er",
        n=args.n,
        d=args.d,
        q=args.q,
        graph=args.graph,
        blocks=args.blocks,
        block_probs=args.block_probs,
        profile_path=args.profile,
    )
    return "sample", handler.sample(spec, args.seed or 0, args.trial, args.out), True


def _cmd_rho_b(args: argparse.Namespace) -> Outcome:
    from .features.spectra.handler import SpectraHandler

    handler = SpectraHandler()
    result = handler.rho_b(_matrix(args), handler.config(args.tol, args.seed or 0))
    return "rho-b", result, result["radius"]["converged"]


def _cmd_norm_h(args: argparse.Namespace) -> Outcome:
    from .features.spectra.handler import SpectraHandler

    handler = SpectraHandler()
    result = handler.norm_h(_matrix(args), handler.config(args.tol, args.seed or 0))
    return "norm-h", result, True


def _cmd_trace(args: argparse.Namespace) -> Outcome:
    from .features.spectra.handler import SpectraHandler

    handler = SpectraHandler()
    cfg = handler.config(args.tol, args.seed or 0, sign_vectors=args.trials)
    return "trace-moment", handler.trace(_matrix(args), args.ell, args.mode, cfg), True


def _cmd_ib_check(args: argparse.Namespace) -> Outcome:
    from .features.ihara_bass.handler import IharaBassHandler

    result = IharaBassHandler().check(_matrix(args))
    return "ib-check", result, result["passed"]


def _cmd_ib_regular(args: argparse.Namespace) -> Outcome:
    from .features.ihara_bass.handler import IharaBassHandler

    result = IharaBassHandler().regular(args.graph)
    return "ib-regular", result, result["passed"]


def _cmd_walks(args: argparse.Namespace) -> Outcome:
    from .features.walks.handler import WalksHandler

    handler = WalksHandler()
    sub = args.walks_command
    if sub == "enumerate":
        result = handler.enumerate(args.n, args.ell, args.mode, args.show)
        return "walks enumerate", result, True
    if sub == "reduce":
        return "walks reduce", handler.reduce(args.walk, normalize=not args.raw), True
    if sub == "verify":
        result = handler.verify(
            args.n, args.ell, args.mode, args.samples, args.seed or 0
        )
        return "walks verify", result, result["passed"]
    spec = handler.moment_spec(args.graph, args.q, args.n, args.d)
    result = handler.moments(spec, args.ell, args.target)
    return "walks moments", result, result["passed"]


def _cmd_experiment(args: argparse.Namespace) -> Outcome:
    from .features.experiments.handler import ExperimentsHandler

    handler = ExperimentsHandler()
    if args.experiment_command == "list":
        return "experiment list", {"configs": handler.list()}, True
    outcome = handler.run(
        args.config,
        args.out,
        args.threads,
        args.trials,
        args.seed,
        args.tol,
        record_golden=args.record_golden,
    )
    return "experiment run", outcome.to_dict(), outcome.passed


COMMANDS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "sample": _cmd_sample,
    "rho-b": _cmd_rho_b,
    "norm-h": _cmd_norm_h,
    "trace-moment": _cmd_trace,
    "ib-check": _cmd_ib_check,
    "ib-regular": _cmd_ib_regular,
    "walks": _cmd_walks,
    "experiment": _cmd_experiment,
}


def _emit(response: Dict[str, Any]) -> None:
    json.dump(response, sys.stdout, indent=2)
    sys.stdout.write("\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one command, print its response and return the exit code"""
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
    except ConfigError as e:
        logging.basicConfig(stream=sys.stderr)
        logger.error(f"Bad environment: {e}")
        _emit(ResponseBuilder("nbspectra").error(error=str(e), details=e.to_dict()))
        return EXIT_CONFIG

    logging.basicConfig(
        level=getattr(
            logging, (args.log_level or settings.log_level).upper(), logging.INFO
        ),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    from .shared.instances import next_step_engine, response_builder

    if args.command == "serve":
        from .server import serve

        return serve()

    try:
        tool, data, passed = COMMANDS[args.command](args)
    except ConfigError as e:
        logger.error(f"Config error: {e}")
        _emit(response_builder.error(error=str(e), details=e.to_dict()))
        return EXIT_CONFIG
    except NbSpectraError as e:
        logger.error(f"{args.command} failed: {e}")
        _emit(response_builder.error(error=str(e), details=e.to_dict()))
        return EXIT_FAILED
    except ValueError as e:
        # unknown enum values (ensemble, mode, target) from the command line
        logger.error(f"{args.command} failed: {e}")
        _emit(response_builder.error(error=str(e), details={"type": "ValueError"}))
        return EXIT_FAILED

    _emit(
        response_builder.success(
            data=data,
            tool=tool,
            message=None if passed else "check failed",
            suggestions=next_step_engine.get_suggestions(tool),
        )
    )
    return EXIT_OK if passed else EXIT_FAILED
