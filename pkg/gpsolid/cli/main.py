"""
gpsolid command line.

    python -m gpsolid <command> [--config FILE] [--jobs N] [--allow-nonconverged] [--out DIR]

Exit codes: 0 success, 1 runtime error, 2 configuration error, 3 a cell
did not converge (unless --allow-nonconverged).
"""

import argparse
import logging
import sys
import time
from typing import List, Optional

from gpsolid import __version__
from gpsolid.cli.commands import RunContext, get_command
from gpsolid.cli.output import resolve_output_dir, write_manifest
from gpsolid.config import settings
from gpsolid.config.run_config import Command, RunBlock, RunConfig, load_config
from gpsolid.errors import ConfigError, GPSolidError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_NONCONVERGED = 3

MANIFEST_NAME = "manifest.txt"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Run configuration file (section.key = value lines)")
    common.add_argument("--jobs", type=int, default=None, help="Worker processes (default: GPSOLID_JOBS or all cores)")
    common.add_argument(
        "--allow-nonconverged",
        action="store_true",
        default=None,
        help="Exit 0 even when a cell did not converge",
    )
    common.add_argument("--out", default=None, help="Output directory (overrides GPSOLID_OUT)")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(prog="gpsolid", description="Nonlocal Gross-Pitaevskii ground states")
    parser.add_argument("--version", action="version", version=f"gpsolid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        Command.CRITICALITY: "Instability threshold and lower bounds on mu_c",
        Command.SOLVE: "One grand-canonical or canonical minimization",
        Command.SWEEP: "Thermodynamic sweep, extrapolation and Legendre transform",
        Command.FIG1: "Built-in 1D vdw reproduction on (0, 40)",
        Command.CLASSICAL: "Classical minimizers and the high-density constant",
        Command.VORTEX: "Degree-one vortex on a 2D disk",
        Command.DIAGNOSE: "Order parameters of a saved snapshot",
    }
    for command, text in helps.items():
        sub.add_parser(command.value, parents=[common], help=text)
    return parser


def configure_logging(verbose: bool = False):
    level = logging.DEBUG if verbose or settings.VERBOSE else getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")


def load_run_config(command: Command, path: Optional[str]) -> RunConfig:
    if path is None:
        if command is not Command.FIG1:
            raise ConfigError(f"'{command.value}' needs --config")
        return RunConfig(run=RunBlock(command=command))
    config = load_config(path)
    if config.command is not command:
        raise ConfigError(f"config is for '{config.command.value}', not '{command.value}'")
    return config


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    command = Command(args.command)

    try:
        config = load_run_config(command, args.config)
    except ConfigError as e:
        for message in e.errors:
            logger.error(f"CONFIG | {message}")
        print(f"gpsolid: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    jobs = args.jobs or config.run.jobs or settings.DEFAULT_JOBS
    allow = settings.ALLOW_NONCONVERGED if args.allow_nonconverged is None else args.allow_nonconverged
    out_dir = resolve_output_dir(config, args.out)
    ctx = RunContext(config, out_dir, jobs=max(1, jobs))
    logger.info(f"RUN | {command.value} -> {out_dir} ({ctx.jobs} worker(s))")

    start = time.perf_counter()
    try:
        get_command(command)(config, ctx)
    except ConfigError as e:
        logger.error(f"CONFIG | {e}")
        print(f"gpsolid: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (GPSolidError, ValueError, OSError) as e:
        logger.error(f"RUN | {command.value} failed: {e}")
        print(f"gpsolid: {e}", file=sys.stderr)
        return EXIT_ERROR

    manifest = ctx.manifest(time.perf_counter() - start)
    write_manifest(manifest, out_dir / MANIFEST_NAME)
    logger.info(f"RUN | wrote {len(manifest.files)} file(s) and {MANIFEST_NAME} to {out_dir}")

    if not manifest.all_converged:
        failed = [cell for cell, ok in manifest.convergence.items() if not ok]
        if allow:
            logger.warning(f"RUN | {len(failed)} non-converged cell(s) allowed: {failed}")
        else:
            logger.error(f"RUN | {len(failed)} non-converged cell(s): {failed}")
            return EXIT_NONCONVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
