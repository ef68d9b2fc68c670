"""
Discrete Laplacian and the Omega x Omega interaction convolution.
"""

import logging
from functools import lru_cache

import numpy as np
from scipy.signal import fftconvolve

from gpsolid.config.constants import NEGATIVE_DENSITY_TOL
from gpsolid.lattice.grid import Boundary, Field, Grid
from gpsolid.potential import Potential

logger = logging.getLogger(__name__)


def pad_ghosts(values: np.ndarray, grid: Grid) -> np.ndarray:
    """One ghost layer per side: zeros for Dirichlet, mirrored copies for Neumann."""
    if grid.boundary is Boundary.DIRICHLET:
        return np.pad(values, 1, mode="constant")
    return np.pad(values, 1, mode="edge")


def laplacian_array(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Second-order stencil Δu on raw node values."""
    padded = pad_ghosts(values, grid)
    h2 = grid.spacing ** 2
    inner = tuple(slice(1, -1) for _ in range(grid.dimension))
    result = -2.0 * grid.dimension * padded[inner]
    for axis in range(grid.dimension):
        up = list(inner)
        down = list(inner)
        up[axis] = slice(2, None)
        down[axis] = slice(None, -2)
        result = result + padded[tuple(up)] + padded[tuple(down)]
    return result / h2


def laplacian_apply(f: Field) -> Field:
    """Δf with the grid's boundary condition."""
    return f.with_values(laplacian_array(f.values, f.grid))


def kinetic_energy_array(values: np.ndarray, grid: Grid) -> float:
    """
    h^d Σ |forward difference / h|^2.

    Dirichlet includes the jumps from the walls to the boundary nodes;
    Neumann has none. This is the exact adjoint of laplacian_array.
    """
    if grid.boundary is Boundary.DIRICHLET:
        values = np.pad(values, 1, mode="constant")
    total = 0.0
    for axis in range(grid.dimension):
        total += float(np.sum(np.abs(np.diff(values, axis=axis)) ** 2))
    return grid.spacing ** (grid.dimension - 2) * total


class InteractionKernel:
    """
    tail(x_i - x_j) on every node offset of a grid.

    apply() evaluates h^d Σ_j tail(x_i - x_j) ρ_j over Omega only, by
    zero-padded FFT convolution; direct() is the naive double sum.
    """

    def __init__(self, p: Potential, grid: Grid):
        self.potential = p
        self.grid = grid
        offsets = [np.arange(-(n - 1), n, dtype=float) for n in grid.shape]
        mesh = np.meshgrid(*offsets, indexing="ij")
        radius = grid.spacing * np.sqrt(sum(m ** 2 for m in mesh))
        self.values = p.tail(radius)
        self.abs_row_sum = float(np.sum(np.abs(self.values)))

    def apply(self, density: np.ndarray) -> np.ndarray:
        density = np.asarray(density, dtype=float)
        if not np.any(density):
            return np.zeros_like(density)
        return self.grid.cell_volume * fftconvolve(density, self.values, mode="same")

    def direct(self, density: np.ndarray) -> np.ndarray:
        density = np.asarray(density, dtype=float)
        points = np.stack([c.ravel() for c in self.grid.mesh()], axis=1)
        distance = np.sqrt(np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1))
        matrix = self.potential.tail(distance)
        return self.grid.cell_volume * (matrix @ density.ravel()).reshape(density.shape)


@lru_cache(maxsize=16)
def get_kernel(p: Potential, grid: Grid) -> InteractionKernel:
    """Kernel for (potential, grid), built once per process."""
    logger.debug(f"LATTICE | building kernel for {p.name} on shape {grid.shape}")
    return InteractionKernel(p, grid)


def interaction_field(p: Potential, density: Field, method: str = "fft") -> Field:
    """
    (tail * ρ)(x_i) over Omega, excluding the contact term.

    Raises ValueError for complex densities or entries below -1e-12.
    """
    if density.is_complex:
        raise ValueError("Density must be a real field")
    if np.any(density.values < -NEGATIVE_DENSITY_TOL):
        raise ValueError(f"Density has negative entries (min {density.values.min():.3e})")
    rho = np.maximum(density.values, 0.0)
    kernel = get_kernel(p, density.grid)
    if method == "fft":
        values = kernel.apply(rho)
    elif method == "direct":
        values = kernel.direct(rho)
    else:
        raise ValueError(f"Unknown convolution method '{method}'")
    return Field(density.grid, values, "real")
