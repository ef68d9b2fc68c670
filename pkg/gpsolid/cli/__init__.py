"""
Experiment runner: run configurations, subcommands and result files.
"""

from gpsolid.cli.commands import COMMANDS, RunContext, get_command
from gpsolid.cli.fig1 import FIG1_MU, Fig1Row, run_fig1, solve_fig1
from gpsolid.cli.main import main
from gpsolid.cli.output import RunManifest, config_hash, emit_csv, read_csv, read_manifest, write_manifest
from gpsolid.config.run_config import RunConfig, load_config, parse_config, serialize_config

__all__ = [
    "COMMANDS",
    "FIG1_MU",
    "Fig1Row",
    "RunContext",
    "RunConfig",
    "RunManifest",
    "config_hash",
    "emit_csv",
    "get_command",
    "load_config",
    "main",
    "parse_config",
    "read_csv",
    "read_manifest",
    "run_fig1",
    "serialize_config",
    "solve_fig1",
    "write_manifest",
]
