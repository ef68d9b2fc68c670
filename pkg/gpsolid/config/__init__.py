"""
Settings and shared constants.

The run-configuration format lives in gpsolid.config.run_config; it is not
imported here because it depends on the numerical packages, which import
their constants from this package.
"""

from gpsolid.config.settings import (
    PROJECT_ROOT,
    OUTPUT_DIR,
    DEFAULT_JOBS,
    ALLOW_NONCONVERGED,
    LOG_LEVEL,
    VERBOSE,
)
from gpsolid.config.constants import (
    CSV_FLOAT_FORMAT,
    KGRID_POINTS,
    MULTISTART_TIE,
    PEAK_THRESHOLD,
    WAVELENGTH_NODES,
)

__all__ = [
    # Settings
    "PROJECT_ROOT",
    "OUTPUT_DIR",
    "DEFAULT_JOBS",
    "ALLOW_NONCONVERGED",
    "LOG_LEVEL",
    "VERBOSE",
    # Constants
    "CSV_FLOAT_FORMAT",
    "KGRID_POINTS",
    "MULTISTART_TIE",
    "PEAK_THRESHOLD",
    "WAVELENGTH_NODES",
]
