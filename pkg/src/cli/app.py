"""Command-line surface

Subcommands print one JSON object on stdout; logs and errors go to stderr.
"""

import argparse
import json
import logging
import math
import sys
from typing import Any, Optional, Sequence

from config import ApplicationConfig
from libs.result import Error
from src import depends
from src.app.use_cases.mass_bounds.dtos import CriticalMassCommandDTO
from src.app.use_cases.simulation.dtos import FitExpansionCommandDTO
from src.app.use_cases.stationary.dtos import LaneEmdenCommandDTO
from src.cli.error import EXIT_OK, EXIT_VERIFICATION, CliError
from src.cli.schemas.run_config import parse_config
from src.domain.errors import GaseousStarError

logger = logging.getLogger(__name__)


def _finite(payload: Any) -> Any:
    """Non-finite floats become null so stdout stays strict JSON."""
    if isinstance(payload, float) and not math.isfinite(payload):
        return None
    if isinstance(payload, dict):
        return {key: _finite(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_finite(value) for value in payload]
    return payload


def emit(payload: dict) -> None:
    print(json.dumps(_finite(payload), sort_keys=True))


def _unwrap(result):
    if result.is_err():
        raise CliError(result.error)
    return result.value


def handle_simulate(args: argparse.Namespace) -> int:
    try:
        with open(args.config, "r") as r_file:
            config = parse_config(r_file.read())
    except OSError as exc:
        raise CliError(Error(code="CONFIGURATION_ERROR", message=f"cannot read {args.config}: {exc}"))
    except GaseousStarError as exc:
        raise CliError(Error.from_exception(exc))

    run_dir = args.output_dir or config.output_dir
    logger.info(f"Simulating {args.config} into {run_dir}")
    response = _unwrap(depends.get_run_simulation(run_dir).execute(config.to_command()))
    emit(response.model_dump(mode="json"))
    return EXIT_OK


def handle_lane_emden(args: argparse.Namespace) -> int:
    command = LaneEmdenCommandDTO(
        gamma=args.gamma, rho_c=args.rho_c, kappa=args.kappa, tol=args.tol, output_path=args.output
    )
    response = _unwrap(depends.get_solve_lane_emden().execute(command))
    emit(response.model_dump(mode="json"))
    return EXIT_OK


def handle_critical_mass(args: argparse.Namespace) -> int:
    command = CriticalMassCommandDTO(
        gamma=args.gamma, E0=args.e0, A_gamma=args.a_gamma, M=args.mass, l=args.l, alpha=args.alpha
    )
    report = _unwrap(depends.get_evaluate_critical_mass().execute(command))
    emit(report.model_dump(mode="json"))
    return EXIT_OK


def handle_verify(args: argparse.Namespace) -> int:
    report = _unwrap(depends.get_verify_run(args.run_dir).execute())
    payload = report.model_dump(mode="json")
    payload["passed"] = report.passed
    payload["failures"] = report.failures
    emit(payload)
    if report.passed:
        return EXIT_OK
    failed = CliError(
        Error(code="VERIFICATION_FAILED", message=f"failed checks: {', '.join(report.failures)}")
    )
    print(failed.to_line(), file=sys.stderr)
    return EXIT_VERIFICATION


def handle_fit_expansion(args: argparse.Namespace) -> int:
    command = FitExpansionCommandDTO(t_lo=args.t_lo, t_hi=args.t_hi)
    fit = _unwrap(depends.get_fit_expansion(args.run_dir).execute(command))
    emit(fit.model_dump(mode="json"))
    return EXIT_OK


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaseous-star", description="Free-boundary Navier-Stokes-Poisson simulator and verifier"
    )
    parser.add_argument("--log-level", default=None, help="Override ApplicationConfig.LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)

    simulate = subparsers.add_parser("simulate", help="Run a simulation from a key = value config")
    simulate.add_argument("config")
    simulate.add_argument("--output-dir", default=None, help="Overrides output_dir from the config")
    simulate.set_defaults(handler=handle_simulate)

    lane_emden = subparsers.add_parser("lane-emden", help="Solve the Lane-Emden equation")
    lane_emden.add_argument("--gamma", type=float, required=True)
    lane_emden.add_argument("--rho-c", type=float, default=1.0)
    lane_emden.add_argument("--kappa", type=float, default=1.0)
    lane_emden.add_argument("--tol", type=float, default=None)
    lane_emden.add_argument("--output", default="lane_emden.csv", help="Profile CSV path")
    lane_emden.set_defaults(handler=handle_lane_emden)

    critical = subparsers.add_parser("critical-mass", help="Evaluate the critical-mass thresholds")
    critical.add_argument("--gamma", type=float, required=True)
    critical.add_argument("--e0", type=float, required=True)
    critical.add_argument("--a-gamma", type=float, default=ApplicationConfig.A_GAMMA)
    critical.add_argument("--l", type=float, default=None)
    critical.add_argument("--alpha", type=float, default=None)
    critical.add_argument("--mass", type=float, default=None, help="Total mass to classify")
    critical.set_defaults(handler=handle_critical_mass)

    verify = subparsers.add_parser("verify", help="Check every inequality on a run directory")
    verify.add_argument("run_dir")
    verify.set_defaults(handler=handle_verify)

    fit = subparsers.add_parser("fit-expansion", help="Fit a1(t) against (1+t) on a window")
    fit.add_argument("run_dir")
    fit.add_argument("--t-lo", type=float, required=True)
    fit.add_argument("--t-hi", type=float, required=True)
    fit.set_defaults(handler=handle_fit_expansion)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=(args.log_level or ApplicationConfig.LOG_LEVEL).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.handler(args)
    except CliError as exc:
        logger.warning(f"Command {args.command} failed: {exc.base_error.code}")
        print(exc.to_line(), file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        # pydantic rejects DTO inputs such as a negative E0
        error = CliError(Error(code="CONFIGURATION_ERROR", message=str(exc).splitlines()[0]))
        print(error.to_line(), file=sys.stderr)
        return error.exit_code
