"""
Uniform grids and sampled fields.

Dirichlet boxes carry the nodes strictly inside (0, L), the wall value 0
being implicit. Neumann boxes are cell-centred: node i sits at (i + 1/2)h
and the mirrored ghost equals the boundary-adjacent value.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np


class Boundary(str, Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


class ScalarType(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True)
class Grid:
    """Box (origin, origin + extents) sampled with spacing h on every axis."""

    extents: Tuple[float, ...]
    spacing: float
    boundary: Boundary = Boundary.DIRICHLET
    origin: Optional[Tuple[float, ...]] = field(default=None)

    def __post_init__(self):
        extents = tuple(float(L) for L in np.atleast_1d(self.extents))
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        origin = (0.0,) * len(extents) if self.origin is None else tuple(float(o) for o in self.origin)
        object.__setattr__(self, "origin", origin)

        if len(extents) not in (1, 2):
            raise ValueError(f"Grids are 1D or 2D, got {len(extents)} extents")
        if len(origin) != len(extents):
            raise ValueError("origin and extents differ in dimension")
        if not self.spacing > 0:
            raise ValueError(f"Grid spacing must be positive, got {self.spacing}")
        for L in extents:
            ratio = L / self.spacing
            if L <= 0 or abs(ratio - round(ratio)) > 1e-9:
                raise ValueError(f"Extent {L} is not an integer multiple of h={self.spacing}")
            if round(ratio) < 2:
                raise ValueError(f"Extent {L} spans fewer than 2 intervals of h={self.spacing}")

    @property
    def dimension(self) -> int:
        return len(self.extents)

    @property
    def intervals(self) -> Tuple[int, ...]:
        return tuple(int(round(L / self.spacing)) for L in self.extents)

    @property
    def shape(self) -> Tuple[int, ...]:
        if self.boundary is Boundary.DIRICHLET:
            return tuple(n - 1 for n in self.intervals)
        return self.intervals

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dimension

    @property
    def volume(self) -> float:
        return math.prod(self.extents)

    def coordinates(self, axis: int = 0) -> np.ndarray:
        """Node coordinates along one axis, computed from (origin, h, index) only."""
        index = np.arange(self.shape[axis], dtype=float)
        offset = 1.0 if self.boundary is Boundary.DIRICHLET else 0.5
        return self.origin[axis] + (index + offset) * self.spacing

    def mesh(self) -> List[np.ndarray]:
        """Coordinate arrays with the grid's shape (ij indexing)."""
        axes = [self.coordinates(a) for a in range(self.dimension)]
        return np.meshgrid(*axes, indexing="ij")

    def to_dict(self) -> dict:
        return {
            "extents": list(self.extents),
            "spacing": self.spacing,
            "boundary": self.boundary.value,
            "origin": list(self.origin),
        }


def box_grid(extent: Union[float, Iterable[float]], spacing: float, boundary: str = "dirichlet") -> Grid:
    """Grid on (0, L) or (0, Lx) x (0, Ly)."""
    extents = tuple(np.atleast_1d(np.asarray(extent, dtype=float)))
    return Grid(extents=extents, spacing=spacing, boundary=Boundary(boundary))


class Field:
    """Samples of u on a grid. Real fields are stored as float64, complex as complex128."""

    def __init__(self, grid: Grid, values, scalar_type: Optional[Union[str, ScalarType]] = None):
        values = np.array(values, copy=True)
        if values.shape != grid.shape:
            values = values.reshape(grid.shape) if values.size == grid.size else values
        if values.shape != grid.shape:
            raise ValueError(f"Field of shape {values.shape} does not match grid shape {grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Field values must be finite")

        if scalar_type is None:
            scalar_type = ScalarType.COMPLEX if np.iscomplexobj(values) else ScalarType.REAL
        scalar_type = ScalarType(scalar_type)
        if scalar_type is ScalarType.REAL:
            if np.iscomplexobj(values):
                if np.any(values.imag != 0):
                    raise ValueError("Real field given values with nonzero imaginary part")
                values = values.real
            values = values.astype(np.float64)
        else:
            values = values.astype(np.complex128)

        values.setflags(write=False)
        self.grid = grid
        self.values = values
        self.scalar_type = scalar_type

    @property
    def is_complex(self) -> bool:
        return self.scalar_type is ScalarType.COMPLEX

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    @property
    def mass(self) -> float:
        """h^d Σ|u|^2"""
        return float(self.grid.cell_volume * np.sum(self.density))

    @property
    def mean_density(self) -> float:
        return self.mass / self.grid.volume

    def with_values(self, values) -> "Field":
        return Field(self.grid, values, self.scalar_type)

    def __repr__(self) -> str:
        return f"Field({self.scalar_type.value}, shape={self.grid.shape}, mass={self.mass:.6g})"
