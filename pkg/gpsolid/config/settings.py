"""
Global gpsolid settings loaded from environment variables.

All settings have sensible defaults so the tools work out of the box.
Override via .env file or environment variables.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# =============================================================================
# Path Configuration
# =============================================================================
PROJECT_ROOT = Path(__file__).parent.parent.parent.resolve()

load_dotenv(PROJECT_ROOT / ".env")

OUTPUT_DIR = os.getenv("GPSOLID_OUT", str(PROJECT_ROOT / "runs"))

# =============================================================================
# Parallelism
# =============================================================================
DEFAULT_JOBS = int(os.getenv("GPSOLID_JOBS", str(os.cpu_count() or 1)))

# =============================================================================
# Run Policy
# =============================================================================
ALLOW_NONCONVERGED = os.getenv("ALLOW_NONCONVERGED", "false").lower() in ("true", "1", "yes")

# =============================================================================
# Logging
# =============================================================================
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
VERBOSE = os.getenv("VERBOSE", "false").lower() in ("true", "1", "yes")
