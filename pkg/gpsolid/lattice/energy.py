"""
Energy, free energy, gradient and residual of the discrete GP functional.

    E(u) = h^d Σ|∇u|^2 + ½ h^{2d} ΣΣ tail(x_i - x_j)|u_i|^2|u_j|^2 + ½ eps0 h^d Σ|u_i|^4
    F(u) = E(u) - mu h^d Σ|u_i|^2

The contact term enters as eps0|u|^2 u in the GP operator, never as a
kernel value at the origin.
"""

import logging
import math
from typing import Tuple

import numpy as np

from gpsolid.errors import EnergyBoundViolation
from gpsolid.lattice.grid import Field, Grid
from gpsolid.lattice.operators import get_kernel, kinetic_energy_array, laplacian_array
from gpsolid.potential import Potential

logger = logging.getLogger(__name__)


def mean_field(values: np.ndarray, grid: Grid, p: Potential) -> Tuple[np.ndarray, np.ndarray]:
    """(|u|^2, tail*|u|^2 + eps0|u|^2) on the nodes."""
    density = np.abs(values) ** 2
    potential = get_kernel(p, grid).apply(density) + p.contact * density
    return density, potential


def evaluate(values: np.ndarray, grid: Grid, p: Potential, mu: float) -> Tuple[float, float, np.ndarray]:
    """
    Energy, free energy and gradient in one pass.

    The gradient g satisfies Re<g, v> h^d = d/dt F(u + t v) at t = 0.
    """
    density, potential = mean_field(values, grid, p)
    kinetic = kinetic_energy_array(values, grid)
    pair = 0.5 * grid.cell_volume * float(np.sum(density * potential))
    energy_value = kinetic + pair
    mass = grid.cell_volume * float(np.sum(density))
    operator = -laplacian_array(values, grid) + (potential - mu) * values
    return energy_value, energy_value - mu * mass, 2.0 * operator


def energy(f: Field, p: Potential) -> float:
    """Discrete GP energy of f."""
    density, potential = mean_field(f.values, f.grid, p)
    return kinetic_energy_array(f.values, f.grid) + 0.5 * f.grid.cell_volume * float(np.sum(density * potential))


def free_energy(f: Field, p: Potential, mu: float) -> float:
    """energy(f, p) - mu·mass(f)."""
    return energy(f, p) - mu * f.mass


def gp_operator(f: Field, p: Potential, mu: float) -> np.ndarray:
    """(-Δ + tail*|f|^2 + eps0|f|^2 - mu) f on the nodes."""
    _, potential = mean_field(f.values, f.grid, p)
    return -laplacian_array(f.values, f.grid) + (potential - mu) * f.values


def gp_gradient(f: Field, p: Potential, mu: float) -> Field:
    """Gradient of the free energy: 2(-Δ + w*|f|^2 - mu) f."""
    return f.with_values(2.0 * gp_operator(f, p, mu))


def gp_residual(f: Field, p: Potential, mu: float) -> float:
    """Sup-norm of the GP operator over the stored nodes."""
    return float(np.max(np.abs(gp_operator(f, p, mu))))


def superstability_floor(grid: Grid, p: Potential, mu: float) -> float:
    """-mu^2/(4 eps) |Omega + B_r|: no free energy on this box can go lower."""
    enlarged = math.prod(L + 2.0 * p.r for L in grid.extents)
    return -(mu ** 2) / (4.0 * p.epsilon) * enlarged


def check_energy_floor(value: float, grid: Grid, p: Potential, mu: float) -> None:
    """Raise EnergyBoundViolation when value drops below the superstability floor."""
    floor = superstability_floor(grid, p, mu)
    slack = 1e-12 * max(1.0, abs(floor))
    if value < floor - slack:
        raise EnergyBoundViolation(
            f"Free energy {value:.12g} below -mu^2/(4 eps)|Omega+B_r| = {floor:.12g} "
            f"for {p!r}; the declared epsilon is not a valid superstability constant"
        )
