"""
Command-line entry point.

    eo-transducer figure <name> [--set key=value]...
    eo-transducer sweep <config-path>
    eo-transducer geo <profile-path> [--energy J]
    eo-transducer validate

Results go to files (figure, sweep) or to stdout as JSON (geo, validate);
logs go to stderr. Exit codes: 0 success, 1 validation failure, 2 usage or
config error, 3 I/O error, 4 computation failure (a run aborted by a
TransducerError such as a diverging integration).
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

import structlog

from eo_transducer.cli.config import load_sweep_spec, run_sweep
from eo_transducer.cli.figures import FIGURES, parse_assignments, run_figure
from eo_transducer.cli.validate import run_checks
from eo_transducer.core.errors import (
    ConfigError,
    InvalidParameterError,
    TransducerError,
    UsageError,
)
from eo_transducer.core.model import angular_to_hz, hz_to_angular
from eo_transducer.electrooptic import CrystalOptics, g_eo_from_profile, load_field_profile
from eo_transducer.settings import settings

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_RUNTIME = 4

DEFAULT_OPTICAL_HZ = 192.43e12
DEFAULT_MICROWAVE_HZ = 8.93e9


def configure_logging(level: str) -> None:
    """Route structlog output to stderr, filtered at `level`."""
    numeric = logging.getLevelNamesMapping().get(level.upper(), logging.INFO)
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eo-transducer",
        description="Cavity electro-optic microwave-optical transduction toolkit.",
    )
    parser.add_argument(
        "--output-dir",
        type=Path,
        default=None,
        help=f"directory for figure outputs (default {settings.output_dir})",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="threads for row-parallel sweeps",
    )
    parser.add_argument("--log-level", default=settings.log_level)
    commands = parser.add_subparsers(dest="command", required=True)

    figure = commands.add_parser("figure", help="reproduce one figure as CSV data")
    figure.add_argument("name", choices=sorted(FIGURES))
    figure.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a figure parameter (Hz-domain units); repeatable",
    )

    sweep = commands.add_parser("sweep", help="run a TOML sweep config")
    sweep.add_argument("config", type=Path)

    geo = commands.add_parser("geo", help="evaluate g_eo from a field profile")
    geo.add_argument("profile", type=Path)
    geo.add_argument("--energy", type=float, default=settings.stored_energy)
    geo.add_argument("--optical-hz", type=float, default=DEFAULT_OPTICAL_HZ)
    geo.add_argument("--microwave-hz", type=float, default=DEFAULT_MICROWAVE_HZ)

    commands.add_parser("validate", help="run the cross-module check suite")
    return parser


def _figure(args: argparse.Namespace) -> int:
    outputs = run_figure(
        args.name,
        parse_assignments(args.overrides),
        output_dir=args.output_dir,
        workers=args.workers,
    )
    report: dict[str, object] = {"table": str(outputs.table), "manifest": str(outputs.manifest)}
    if outputs.extras:
        report["extras"] = [str(path) for path in outputs.extras]
    print(json.dumps(report))
    return EXIT_OK


def _sweep(args: argparse.Namespace) -> int:
    path: Path = args.config
    outputs = run_sweep(load_sweep_spec(path), base_dir=path.parent, workers=args.workers)
    print(json.dumps({"table": str(outputs.table), "manifest": str(outputs.manifest)}))
    return EXIT_OK


def _geo(args: argparse.Namespace) -> int:
    profile = load_field_profile(args.profile, stored_energy=args.energy)
    optics = CrystalOptics(settings.refractive_index, settings.electrooptic_coeff)
    omega_a = hz_to_angular(args.optical_hz)
    estimate = g_eo_from_profile(
        profile, optics, omega_a, omega_a, hz_to_angular(args.microwave_hz)
    )
    report = {
        "g_eo_Hz": angular_to_hz(estimate.magnitude),
        "g_eo_signed_Hz": angular_to_hz(estimate.signed),
        "samples": int(profile.phi.size),
        "stored_energy_J": profile.stored_energy,
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _validate(_: argparse.Namespace) -> int:
    results = run_checks()
    failed = [r.name for r in results if not r.passed]
    report = {
        "passed": not failed,
        "checks": [r.model_dump(mode="json") for r in results],
    }
    print(json.dumps(report, indent=2))
    if failed:
        logger.warning("validation failed", checks=failed)
        return EXIT_VALIDATION
    return EXIT_OK


COMMANDS = {
    "figure": _figure,
    "sweep": _sweep,
    "geo": _geo,
    "validate": _validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on misuse and 0 on --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, InvalidParameterError) as exc:
        logger.error("rejected", command=args.command, error=str(exc))
        return EXIT_USAGE
    except OSError as exc:
        logger.error("i/o failure", command=args.command, error=str(exc))
        return EXIT_IO
    except TransducerError as exc:
        logger.error("run failed", command=args.command, error=str(exc))
        return EXIT_RUNTIME


def start() -> None:
    """Console-script entry point."""
    sys.exit(main())
