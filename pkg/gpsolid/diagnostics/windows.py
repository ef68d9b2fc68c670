"""
Interior regions and box windows on a grid.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from gpsolid.config.constants import BOUNDARY_MARGIN, BOUNDARY_MARGIN_FRACTION
from gpsolid.lattice import Grid

Bounds = Sequence[Tuple[float, float]]


def boundary_margin(grid: Grid) -> float:
    """Width of the excluded boundary layer: min(5, L/8) for the shortest side."""
    return min(BOUNDARY_MARGIN, BOUNDARY_MARGIN_FRACTION * min(grid.extents))


def interior_slices(grid: Grid, margin: Optional[float] = None) -> Tuple[slice, ...]:
    """Index ranges of the nodes at distance >= margin from every wall."""
    margin = boundary_margin(grid) if margin is None else margin
    slices = []
    for axis, L in enumerate(grid.extents):
        x = grid.coordinates(axis) - grid.origin[axis]
        inside = np.nonzero((x >= margin - 1e-12) & (x <= L - margin + 1e-12))[0]
        if len(inside) == 0:
            raise ValueError(f"Boundary margin {margin:g} leaves no interior on axis {axis}")
        slices.append(slice(int(inside[0]), int(inside[-1]) + 1))
    return tuple(slices)


def default_window(grid: Grid) -> Bounds:
    """The interior box, as coordinate bounds."""
    margin = boundary_margin(grid)
    return [(o + margin, o + L - margin) for o, L in zip(grid.origin, grid.extents)]


def window_mask(grid: Grid, bounds: Optional[Bounds] = None) -> np.ndarray:
    """Nodes inside the closed box given by per-axis (lo, hi) bounds."""
    bounds = default_window(grid) if bounds is None else bounds
    if len(bounds) != grid.dimension:
        raise ValueError(f"Window has {len(bounds)} axes, grid has {grid.dimension}")
    mask = np.ones(grid.shape, dtype=bool)
    for axis, (mesh, (lo, hi)) in enumerate(zip(grid.mesh(), bounds)):
        low_wall = grid.origin[axis]
        high_wall = grid.origin[axis] + grid.extents[axis]
        if lo < low_wall or hi > high_wall or lo >= hi:
            raise ValueError(f"Window ({lo:g}, {hi:g}) is not inside the box on axis {axis}")
        mask &= (mesh >= lo - 1e-12) & (mesh <= hi + 1e-12)
    if not np.any(mask):
        raise ValueError("Window contains no grid nodes")
    return mask
