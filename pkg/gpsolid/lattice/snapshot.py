"""
Field snapshots.

Binary layout (little endian):
    magic "GPSF" | version u16 | d u8 | boundary u8 | scalar u8 | kind u8
    extents f64[d] | origin f64[d] | spacing f64
    values, row-major f64 (complex values as interleaved re, im pairs)

kind is 0 for a field u and 1 for a classical measure (node weights).
"""

import struct
from pathlib import Path
from typing import Tuple

import numpy as np

from gpsolid.config.constants import SNAPSHOT_MAGIC, SNAPSHOT_VERSION
from gpsolid.errors import SnapshotFormatError
from gpsolid.lattice.grid import Boundary, Field, Grid, ScalarType

_PREFIX = struct.Struct("<4sHBBBB")
_BOUNDARY_CODES = {Boundary.DIRICHLET: 0, Boundary.NEUMANN: 1}
_SCALAR_CODES = {ScalarType.REAL: 0, ScalarType.COMPLEX: 1}
KINDS = ("field", "measure")


def encode_snapshot(field: Field, kind: str = "field") -> bytes:
    grid = field.grid
    header = _PREFIX.pack(
        SNAPSHOT_MAGIC,
        SNAPSHOT_VERSION,
        grid.dimension,
        _BOUNDARY_CODES[grid.boundary],
        _SCALAR_CODES[field.scalar_type],
        KINDS.index(kind),
    )
    geometry = struct.pack(f"<{2 * grid.dimension + 1}d", *grid.extents, *grid.origin, grid.spacing)
    dtype = "<c16" if field.is_complex else "<f8"
    return header + geometry + np.ascontiguousarray(field.values).astype(dtype).tobytes()


def decode_snapshot(blob: bytes) -> Tuple[Field, str]:
    if len(blob) < _PREFIX.size:
        raise SnapshotFormatError("Snapshot too short for its header")
    magic, version, d, bc, scalar, kind = _PREFIX.unpack_from(blob, 0)
    if magic != SNAPSHOT_MAGIC:
        raise SnapshotFormatError(f"Bad snapshot magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise SnapshotFormatError(f"Unsupported snapshot version {version}")
    if d not in (1, 2) or bc > 1 or scalar > 1 or kind >= len(KINDS):
        raise SnapshotFormatError("Corrupt snapshot header")

    geometry = struct.Struct(f"<{2 * d + 1}d")
    numbers = geometry.unpack_from(blob, _PREFIX.size)
    grid = Grid(
        extents=tuple(numbers[:d]),
        spacing=numbers[-1],
        boundary=list(_BOUNDARY_CODES)[bc],
        origin=tuple(numbers[d:2 * d]),
    )
    scalar_type = list(_SCALAR_CODES)[scalar]
    dtype = "<c16" if scalar_type is ScalarType.COMPLEX else "<f8"
    payload = blob[_PREFIX.size + geometry.size:]
    expected = grid.size * np.dtype(dtype).itemsize
    if len(payload) != expected:
        raise SnapshotFormatError(f"Snapshot payload has {len(payload)} bytes, expected {expected}")
    values = np.frombuffer(payload, dtype=dtype).reshape(grid.shape)
    return Field(grid, values, scalar_type), KINDS[kind]


def write_snapshot(field: Field, path, kind: str = "field") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_snapshot(field, kind))
    return path


def read_snapshot(path) -> Tuple[Field, str]:
    return decode_snapshot(Path(path).read_bytes())


def export_text(field: Field, path) -> Path:
    """Plot columns: x, |u|^2 in 1D; x, y, |u|^2 in 2D."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = [c.ravel() for c in field.grid.mesh()] + [field.density.ravel()]
    header = "x density" if field.grid.dimension == 1 else "x y density"
    np.savetxt(path, np.column_stack(columns), fmt="%.17g", header=header, comments="# ")
    return path
