"""
Sobolev preconditioner (sigma - Δ_h)^{-1}.

The Dirichlet stencil on interior nodes is diagonalised by the type-I sine
transform, the mirrored Neumann stencil by the type-II cosine transform.
"""

import numpy as np
from scipy.fft import dctn, dstn, idctn, idstn

from gpsolid.lattice import Boundary, Grid


class SobolevPreconditioner:
    def __init__(self, grid: Grid, shift: float):
        if shift <= 0:
            raise ValueError(f"Preconditioner shift must be positive, got {shift}")
        self.grid = grid
        self.shift = shift
        h2 = grid.spacing ** 2
        axes = []
        for n, intervals in zip(grid.shape, grid.intervals):
            j = np.arange(n, dtype=float)
            if grid.boundary is Boundary.DIRICHLET:
                theta = np.pi * (j + 1.0) / intervals
            else:
                theta = np.pi * j / n
            axes.append((2.0 - 2.0 * np.cos(theta)) / h2)
        mesh = np.meshgrid(*axes, indexing="ij")
        self.eigenvalues = shift + sum(mesh)

    def __call__(self, values: np.ndarray) -> np.ndarray:
        if np.iscomplexobj(values):
            return self(values.real) + 1j * self(values.imag)
        if self.grid.boundary is Boundary.DIRICHLET:
            return idstn(dstn(values, type=1, norm="ortho") / self.eigenvalues, type=1, norm="ortho")
        return idctn(dctn(values, type=2, norm="ortho") / self.eigenvalues, type=2, norm="ortho")
