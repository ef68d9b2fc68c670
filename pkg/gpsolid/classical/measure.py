"""
Nonnegative node weights and the classical objective

    Q(nu) = ½ Σ_ij tail(x_i - x_j) nu_i nu_j + eps0/(2 h^d) Σ nu_i^2 - mu Σ nu_i.

nu_i is a mass (units of mass, not density); nu_i / h^d is the density the
GP fields are compared against. The contact term is the diagonal that a
smooth density nu_i = rho_i h^d reproduces.
"""

from typing import Tuple

import numpy as np

from gpsolid.lattice import Field, Grid, get_kernel
from gpsolid.potential import Potential


class ClassicalMeasure:
    """Weights nu_i >= 0 on the nodes of a grid."""

    def __init__(self, grid: Grid, weights):
        weights = np.array(weights, dtype=float, copy=True)
        if weights.shape != grid.shape:
            raise ValueError(f"Weights of shape {weights.shape} do not match grid shape {grid.shape}")
        if not np.all(np.isfinite(weights)):
            raise ValueError("Measure weights must be finite")
        if np.any(weights < 0):
            raise ValueError(f"Measure weights must be >= 0 (min {weights.min():.3e})")
        weights.setflags(write=False)
        self.grid = grid
        self.weights = weights

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def density(self) -> np.ndarray:
        return self.weights / self.grid.cell_volume

    def scaled(self, factor: float) -> "ClassicalMeasure":
        return ClassicalMeasure(self.grid, factor * self.weights)

    def as_field(self) -> Field:
        """The weights as a real field, for the snapshot format."""
        return Field(self.grid, self.weights, "real")

    @classmethod
    def from_field(cls, field: Field) -> "ClassicalMeasure":
        return cls(field.grid, np.real(field.values))

    def __repr__(self) -> str:
        return f"ClassicalMeasure(shape={self.grid.shape}, mass={self.mass:.6g})"


def potential_of(weights: np.ndarray, grid: Grid, p: Potential) -> np.ndarray:
    """(w*nu)_i = Σ_j tail(x_i - x_j) nu_j + eps0 nu_i / h^d."""
    h_d = grid.cell_volume
    return get_kernel(p, grid).apply(weights) / h_d + p.contact * weights / h_d


def objective(weights: np.ndarray, grid: Grid, p: Potential, mu: float) -> Tuple[float, np.ndarray]:
    """Q(nu) and its gradient w*nu - mu."""
    field = potential_of(weights, grid, p)
    value = 0.5 * float(np.sum(weights * field)) - mu * float(np.sum(weights))
    return value, field - mu


def classical_energy(measure: ClassicalMeasure, p: Potential) -> float:
    """½ nuᵀ(W + eps0/h^d) nu."""
    field = potential_of(measure.weights, measure.grid, p)
    return 0.5 * float(np.sum(measure.weights * field))
