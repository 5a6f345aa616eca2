"""Command-line interface: `toriclab <command> ...`.

Exit codes: 0 success, 1 negative answer (non-member for `check`, disagreement
for `affine-check`), 2 invalid input or failed analysis.
"""

import argparse
import logging
import sys
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from src import __version__
from src.core.exceptions import ToricLabError
from src.core.logging import setup_logging
from src.schemas.run_config import RunConfig
from src.services.analysis import AnalysisService, get_analysis_service
from src.services.network import (
    example_network,
    list_examples,
    load_rates,
    resolve_network,
    serialize_network,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _parse_floats(text: str, label: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ValueError(f"{label} must be comma-separated numbers") from e


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol", type=float, default=None, help="membership tolerance (default 1e-8)"
    )
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="toriclab",
        description="Toric locus analysis for mass-action reaction networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    network_help = "network JSON file, or example:NAME for a built-in network"

    analyze = commands.add_parser("analyze", parents=[common], help="structural summary")
    analyze.add_argument("network", help=network_help)
    analyze.add_argument("--rates", help="rates JSON file used for the tree constants")

    check = commands.add_parser("check", parents=[common], help="toric locus membership")
    check.add_argument("network", help=network_help)
    check.add_argument("rates", help="rates JSON file")

    equilibrium = commands.add_parser(
        "equilibrium", parents=[common], help="complex balanced equilibrium in x0 + S"
    )
    equilibrium.add_argument("network", help=network_help)
    equilibrium.add_argument("rates", help="rates JSON file")
    equilibrium.add_argument("--x0", required=True, help="comma-separated positive state")

    simulate = commands.add_parser("simulate", parents=[common], help="RK4 trajectory as CSV")
    simulate.add_argument("network", help=network_help)
    simulate.add_argument("rates", help="rates JSON file")
    simulate.add_argument("--x0", required=True, help="comma-separated positive state")
    simulate.add_argument("--t-end", type=float, default=None, dest="t_end")
    simulate.add_argument("--dt", type=float, default=None)
    simulate.add_argument(
        "--check-convergence",
        action="store_true",
        help="log the distance of the final state to the complex balanced equilibrium",
    )

    sample = commands.add_parser("sample", parents=[common], help="random members of V(G)")
    sample.add_argument("network", help=network_help)
    sample.add_argument("--count", type=int, default=10)
    sample.add_argument("--seed", type=int, default=None)
    sample.add_argument("--x0", default=None, help="comma-separated positive reference state")

    path = commands.add_parser("path", parents=[common], help="path inside V(G)")
    path.add_argument("network", help=network_help)
    path.add_argument("rates_a", help="rates JSON file for the start")
    path.add_argument("rates_b", help="rates JSON file for the end")
    path.add_argument("--steps", type=int, default=None)
    path.add_argument("--x0", default=None, help="comma-separated positive reference state")

    affine = commands.add_parser(
        "affine-check", parents=[common], help="membership under an affine map of the complexes"
    )
    affine.add_argument("network", help=network_help)
    affine.add_argument("--matrix", required=True, help="n x n matrix, row-major, comma-separated")
    affine.add_argument("--offset", required=True, help="n offsets, comma-separated")
    affine.add_argument("--trials", type=int, default=None)
    affine.add_argument("--seed", type=int, default=None)

    examples = commands.add_parser("examples", parents=[common], help="built-in networks")
    examples.add_argument("name", nargs="?", help="print this network as JSON")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    values = {
        key: getattr(args, key)
        for key in ("tol", "seed", "steps", "count", "trials", "t_end", "dt")
        if getattr(args, key, None) is not None
    }
    return RunConfig(**values)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dispatch(args: argparse.Namespace, service: AnalysisService) -> int:
    if args.command == "examples":
        if args.name is None:
            _emit("\n".join(list_examples()))
        else:
            _emit(serialize_network(example_network(args.name)))
        return EXIT_OK

    config = _run_config(args)
    net = resolve_network(args.network)

    if args.command == "analyze":
        rates = load_rates(args.rates, net) if args.rates else None
        _emit(service.analyze(net, rates).model_dump_json(indent=2, exclude_none=True))
        return EXIT_OK

    if args.command == "check":
        report = service.check(net, load_rates(args.rates, net), config.tol)
        _emit(report.model_dump_json(indent=2))
        return EXIT_OK if report.member else EXIT_NEGATIVE

    if args.command == "equilibrium":
        report = service.equilibrium(net, load_rates(args.rates, net), args.x0, config.tol)
        _emit(report.model_dump_json(indent=2))
        return EXIT_OK

    if args.command == "simulate":
        rates = load_rates(args.rates, net)
        _emit(service.simulate(net, rates, args.x0, config.t_end, config.dt))
        if args.check_convergence:
            report = service.convergence_report(
                net, rates, args.x0, config.t_end, config.dt, config.tol
            )
            logger.info(
                f"Convergence: distance to equilibrium {report.distance:.3e}, "
                f"S-perp drift {report.conservation_drift:.3e}"
            )
        return EXIT_OK

    if args.command == "sample":
        report = service.sample(net, config.count, config.seed, args.x0)
        _emit(report.model_dump_json(indent=2))
        return EXIT_OK

    if args.command == "path":
        report = service.path(
            net,
            load_rates(args.rates_a, net),
            load_rates(args.rates_b, net),
            args.x0,
            config.steps,
            config.tol,
        )
        _emit(report.model_dump_json(indent=2))
        return EXIT_OK

    if args.command == "affine-check":
        matrix = _parse_floats(args.matrix, "--matrix")
        if len(matrix) != net.n * net.n:
            raise ValueError(f"--matrix needs {net.n * net.n} entries, got {len(matrix)}")
        offset = _parse_floats(args.offset, "--offset")
        report = service.affine_check(
            net,
            np.array(matrix).reshape(net.n, net.n),
            offset,
            config.trials,
            config.seed,
            args.tol,
        )
        _emit(report.model_dump_json(indent=2))
        return EXIT_OK if report.agree else EXIT_NEGATIVE

    raise ValueError(f"unknown command {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging("DEBUG" if args.verbose else None)
    try:
        return _dispatch(args, get_analysis_service())
    except ValidationError as e:
        print(f"toriclab: invalid options: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_ERROR
    except (ToricLabError, ValueError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"toriclab: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
