"""
Vortex in a disk: complex minimizer with the boundary value
g(x) = sqrt(rho)(x1 + i x2)/L, rho = mu/∫w.

The functional is the fluid-renormalized energy

    E(u) = Σ_bonds |∇u|^2 h^d + ½ h^{2d} σᵀ W σ + ½ eps0 h^d Σ σ^2,
    σ = (|u|^2 - rho) on the disk, 0 outside,

with bonds restricted to pairs of disk nodes. Ring nodes (disk nodes with a
neighbour off the disk or off the grid) are clamped to g; interior disk
nodes are free; everything else is inactive and held at zero.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from gpsolid.lattice import Boundary, Field, Grid, get_kernel, laplacian_array
from gpsolid.potential import Potential, moments
from gpsolid.solver.descent import DescentProblem, Evaluation, run_descent
from gpsolid.solver.grand_canonical import require_stability
from gpsolid.solver.options import MinimizationResult, MinimizeOptions
from gpsolid.solver.preconditioner import SobolevPreconditioner

logger = logging.getLogger(__name__)

# default resolution: this many intervals per unit length, at least 32 per radius
_NODES_PER_UNIT = 10


def disk_grid(radius: float, spacing: Optional[float] = None) -> Grid:
    """Square (-L, L)^2 with an even number of intervals, so the centre is a node."""
    if radius <= 0:
        raise ValueError(f"Disk radius must be positive, got {radius}")
    target = spacing if spacing is not None else min(1.0 / _NODES_PER_UNIT, radius / 32.0)
    half = math.ceil(radius / target - 1e-9)
    h = radius / half
    return Grid(extents=(2.0 * radius, 2.0 * radius), spacing=h, boundary=Boundary.DIRICHLET,
                origin=(-radius, -radius))


def disk_masks(grid: Grid, radius: float) -> Tuple[np.ndarray, np.ndarray]:
    """(disk, ring) boolean masks on the grid nodes."""
    x, y = grid.mesh()
    disk = x ** 2 + y ** 2 <= radius ** 2 * (1.0 + 1e-12)
    padded = np.pad(disk, 1, mode="constant", constant_values=False)
    all_neighbours_in = (
        padded[2:, 1:-1] & padded[:-2, 1:-1] & padded[1:-1, 2:] & padded[1:-1, :-2]
    )
    ring = disk & ~all_neighbours_in
    return disk, ring


def boundary_values(grid: Grid, density: float, radius: float) -> np.ndarray:
    x, y = grid.mesh()
    return math.sqrt(density) * (x + 1j * y) / radius


def vortex_seed(grid: Grid, density: float, mu: float) -> np.ndarray:
    """sqrt(rho) tanh(|x| sqrt(mu)) e^{i theta}, zero at the centre."""
    x, y = grid.mesh()
    r = np.hypot(x, y)
    phase = np.where(r > 0, (x + 1j * y) / np.where(r > 0, r, 1.0), 0.0)
    return math.sqrt(density) * np.tanh(r * math.sqrt(mu)) * phase


def masked_kinetic(values: np.ndarray, disk: np.ndarray, grid: Grid) -> float:
    total = 0.0
    for axis in range(2):
        jumps = np.abs(np.diff(values, axis=axis)) ** 2
        bonds = np.logical_and(
            np.take(disk, range(1, disk.shape[axis]), axis=axis),
            np.take(disk, range(0, disk.shape[axis] - 1), axis=axis),
        )
        total += float(np.sum(jumps[bonds]))
    return total


class VortexProblem(DescentProblem):
    def __init__(self, p: Potential, mu: float, grid: Grid, radius: float, opts: MinimizeOptions):
        self.potential = p
        self.mu = mu
        self.grid = grid
        self.density = mu / moments(p).integral
        self.disk, self.ring = disk_masks(grid, radius)
        self.free = self.disk & ~self.ring
        self.clamped = np.where(self.ring, boundary_values(grid, self.density, radius), 0.0)
        self.kernel = get_kernel(p, grid)
        self.cell_volume = grid.cell_volume
        self.tolerance = opts.grad_tol * max(1.0, mu)
        self._sobolev = SobolevPreconditioner(grid, opts.preconditioner_shift or max(mu, 1.0))

    def preconditioner(self, gradient: np.ndarray) -> np.ndarray:
        masked = np.where(self.free, gradient, 0.0)
        return np.where(self.free, self._sobolev(masked), 0.0)

    def retract(self, values: np.ndarray) -> np.ndarray:
        return np.where(self.free, values, self.clamped)

    def excess(self, values: np.ndarray) -> np.ndarray:
        return np.where(self.disk, np.abs(values) ** 2 - self.density, 0.0)

    def evaluate(self, values: np.ndarray) -> Evaluation:
        sigma = self.excess(values)
        potential = self.kernel.apply(sigma) + self.potential.contact * sigma
        kinetic = masked_kinetic(values, self.disk, self.grid)
        value = kinetic + 0.5 * self.cell_volume * float(np.sum(sigma * potential))
        # free nodes only have disk neighbours, so the plain stencil is exact there
        operator = -laplacian_array(values, self.grid) + potential * values
        gradient = np.where(self.free, 2.0 * operator, 0.0)
        return Evaluation(value=value, gradient=gradient, residual=0.5 * float(np.max(np.abs(gradient))))


def solve_vortex_disk(
    p: Potential,
    mu: float,
    radius: float,
    opts: Optional[MinimizeOptions] = None,
    spacing: Optional[float] = None,
) -> MinimizationResult:
    """
    Minimize the renormalized energy on the disk of radius L with the
    degree-one boundary value.

    energy is the renormalized functional, free_energy = energy - mu·mass
    with the mass taken over the disk.
    """
    if p.dimension != 2:
        raise ValueError("Vortex problems need a 2D potential")
    if mu <= 0:
        raise ValueError(f"Vortex problems need mu > 0, got {mu}")
    opts = opts or MinimizeOptions()
    require_stability(p, opts)
    if radius * math.sqrt(mu) < 1.0:
        logger.warning(f"VORTEX | L={radius:g} is below the healing length 1/sqrt(mu)={1 / math.sqrt(mu):.3g}")

    grid = disk_grid(radius, spacing)
    problem = VortexProblem(p, mu, grid, radius, opts)
    seed = problem.retract(vortex_seed(grid, problem.density, mu))
    logger.info(f"VORTEX | {p.name} mu={mu:g} L={radius:g} h={grid.spacing:.4g} free nodes={int(problem.free.sum())}")

    outcome = run_descent(problem, seed, opts, "vortex")
    field = Field(grid, outcome.values, "complex")
    return MinimizationResult(
        field=field,
        energy=outcome.evaluation.value,
        free_energy=outcome.evaluation.value - mu * field.mass,
        mass=field.mass,
        multiplier=mu,
        residual=outcome.evaluation.residual,
        iterations=outcome.iterations,
        converged=outcome.converged,
        seed="vortex",
        history=outcome.history,
        seed_free_energies={"vortex": outcome.evaluation.value - mu * field.mass},
    )
