"""
Result files: CSV tables and the run manifest.

CSV floats are written with 17 significant digits so that parsing them
back gives the same doubles. Manifests are ``key=value`` text.
"""

import csv
import hashlib
import logging
import os
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from pydantic import BaseModel, Field

from gpsolid import __version__
from gpsolid.config import settings
from gpsolid.config.constants import CSV_FLOAT_FORMAT
from gpsolid.config.run_config import RunConfig, serialize_config

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return format(value, CSV_FLOAT_FORMAT)
    return str(value)


def emit_csv(records: Iterable[Mapping[str, Any]], path, schema: Sequence[str]) -> Path:
    """
    Write records as CSV with a header row and LF line endings.

    Args:
        records: Mappings whose keys are exactly the schema columns
        path: Target file; parent directories are created
        schema: Column order

    Returns:
        The written path

    Raises:
        ValueError: a record's keys differ from the schema
    """
    path = Path(path)
    columns = list(schema)
    rows = []
    for i, record in enumerate(records):
        if set(record) != set(columns):
            extra = sorted(set(record) - set(columns))
            missing = sorted(set(columns) - set(record))
            raise ValueError(f"Record {i} does not match the schema (extra {extra}, missing {missing})")
        rows.append([format_cell(record[c]) for c in columns])

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    logger.debug(f"OUTPUT | {path.name}: {len(rows)} rows")
    return path


def read_csv(path) -> List[Dict[str, str]]:
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def config_hash(config: RunConfig) -> str:
    """SHA-256 of the canonical config text."""
    return hashlib.sha256(serialize_config(config).encode("utf-8")).hexdigest()


def resolve_output_dir(config: RunConfig, override: Optional[str] = None) -> Path:
    """--out, then GPSOLID_OUT, then run.output, then the settings default."""
    if override:
        return Path(override)
    env = os.getenv("GPSOLID_OUT")
    if env:
        return Path(env)
    if config.run.output:
        return Path(config.run.output)
    return Path(settings.OUTPUT_DIR)


class RunManifest(BaseModel):
    """What a run produced and whether every cell converged."""

    config_hash: str
    version: str = __version__
    command: str
    wall_time: float = Field(0.0, ge=0)
    timestamp: str = ""
    convergence: Dict[str, bool] = Field(default_factory=dict)
    files: List[str] = Field(default_factory=list)

    @property
    def all_converged(self) -> bool:
        return all(self.convergence.values())

    def lines(self) -> List[str]:
        out = [
            f"config_hash={self.config_hash}",
            f"version={self.version}",
            f"command={self.command}",
            f"wall_time={self.wall_time:.3f}",
            f"timestamp={self.timestamp}",
            f"all_converged={format_cell(self.all_converged)}",
        ]
        out.extend(f"converged.{cell}={format_cell(ok)}" for cell, ok in self.convergence.items())
        out.extend(f"file={name}" for name in self.files)
        return out


def write_manifest(manifest: RunManifest, path) -> Path:
    """Write the manifest, stamping the UTC time if it has none."""
    path = Path(path)
    if not manifest.timestamp:
        manifest = manifest.model_copy(
            update={"timestamp": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")}
        )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(manifest.lines()) + "\n")
    return path


def read_manifest(path) -> Dict[str, List[str]]:
    """Manifest keys to their values; ``file`` and repeated keys collect in order."""
    entries: Dict[str, List[str]] = {}
    for line in Path(path).read_text().splitlines():
        key, _, value = line.partition("=")
        entries.setdefault(key, []).append(value)
    return entries
