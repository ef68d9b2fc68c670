"""
Window averages of the current Im(conj(u)∇u) and of |∇u|^2.

Gradients are central differences (one-sided at the array edges).
"""

from typing import List, Optional

import numpy as np

from gpsolid.diagnostics.windows import Bounds, window_mask
from gpsolid.lattice import Field


def _gradients(f: Field) -> List[np.ndarray]:
    values = np.asarray(f.values)
    if f.grid.dimension == 1:
        return [np.gradient(values, f.grid.spacing)]
    return list(np.gradient(values, f.grid.spacing))


def momentum_density(f: Field, window: Optional[Bounds] = None) -> np.ndarray:
    """|window|^{-1} h^d Σ Im(conj(u) ∂_j u), one entry per axis."""
    mask = window_mask(f.grid, window)
    conj = np.conj(np.asarray(f.values))
    return np.array([float(np.mean(np.imag(conj * g)[mask])) for g in _gradients(f)])


def kinetic_density(f: Field, window: Optional[Bounds] = None) -> float:
    """|window|^{-1} h^d Σ |∇u|^2."""
    mask = window_mask(f.grid, window)
    total = sum(np.abs(g) ** 2 for g in _gradients(f))
    return float(np.mean(total[mask]))
