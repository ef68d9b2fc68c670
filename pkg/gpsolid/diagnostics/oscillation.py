"""
Sliding-window oscillation of |u|^2.

For a solid, every window of radius R must see a density contrast:
inf over windows of (max - min)^2 is bounded below by
rho(rho∫w - mu)/∫|w|. The scan excludes the boundary layer and compares
against half that value to absorb finite-size effects.
"""

import logging
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.ndimage import maximum_filter, minimum_filter, uniform_filter

from gpsolid.config.constants import OSCILLATION_SLACK
from gpsolid.diagnostics.windows import boundary_margin, interior_slices
from gpsolid.lattice import Field
from gpsolid.potential import Potential, moments

logger = logging.getLogger(__name__)


class OscillationReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    radius: float
    margin: float
    centers: List[np.ndarray]
    window_max: np.ndarray
    window_min: np.ndarray
    window_variance: np.ndarray
    worst_range: float
    worst_variance: float
    density: float
    rhs: Optional[float] = None
    flag: bool = False

    @property
    def worst_range_squared(self) -> float:
        return self.worst_range ** 2

    def rows(self) -> List[Dict[str, float]]:
        rows = []
        names = ["x", "y"][: len(self.centers)]
        for index in np.ndindex(self.window_max.shape):
            row = {name: float(c[index]) for name, c in zip(names, self.centers)}
            row.update(
                max=float(self.window_max[index]),
                min=float(self.window_min[index]),
                variance=float(self.window_variance[index]),
            )
            rows.append(row)
        return rows


def _valid(array: np.ndarray, half: int) -> np.ndarray:
    """Centres whose whole window lies in the array."""
    return array[tuple(slice(half, n - half) for n in array.shape)]


def window_half_width(f: Field, radius: float) -> int:
    if radius < 3.0 * f.grid.spacing:
        raise ValueError(f"Window radius {radius:g} is below 3h = {3 * f.grid.spacing:g}")
    return int(np.floor(radius / f.grid.spacing + 1e-9))


def oscillation(f: Field, radius: float, p: Optional[Potential] = None, mu: Optional[float] = None) -> OscillationReport:
    """
    Per-window max, min and variance of |u|^2 over boxes of half-width R
    centred on interior nodes.

    With a potential and mu the report carries the comparison value
    rho(rho∫w - mu)/∫|w| (rho the interior mean density) and the flag
    inf (max - min)^2 >= 0.5·rhs, which is only set when rhs > 0.

    Raises ValueError when R < 3h or the window does not fit in the interior.
    """
    half = window_half_width(f, radius)
    margin = boundary_margin(f.grid)
    region = interior_slices(f.grid, margin)
    density = f.density[region]
    size = 2 * half + 1
    if any(n < size for n in density.shape):
        raise ValueError(f"Window of {size} nodes does not fit in the interior {density.shape}")

    high = _valid(maximum_filter(density, size=size, mode="nearest"), half)
    low = _valid(minimum_filter(density, size=size, mode="nearest"), half)
    mean = uniform_filter(density, size=size, mode="nearest")
    mean_square = uniform_filter(density ** 2, size=size, mode="nearest")
    variance = _valid(np.maximum(mean_square - mean ** 2, 0.0), half)
    centers = [_valid(c[region], half) for c in f.grid.mesh()]

    rho = float(np.mean(density))
    worst_range = float(np.min(high - low))
    report = OscillationReport(
        radius=radius,
        margin=margin,
        centers=centers,
        window_max=high,
        window_min=low,
        window_variance=variance,
        worst_range=worst_range,
        worst_variance=float(np.min(variance)),
        density=rho,
    )
    if p is not None and mu is not None:
        m = moments(p)
        rhs = rho * (rho * m.integral - mu) / m.absolute
        report.rhs = rhs
        report.flag = bool(rhs > 0 and worst_range ** 2 >= OSCILLATION_SLACK * rhs)
        logger.info(
            f"DIAG | oscillation R={radius:g}: inf range^2={worst_range ** 2:.6g}, rhs={rhs:.6g}, flag={report.flag}"
        )
    return report


def fluid_variance(f: Field, rho: float, radius: float) -> float:
    """Largest window mean of (|u|^2 - rho)^2 over the interior."""
    half = window_half_width(f, radius)
    density = f.density[interior_slices(f.grid)]
    size = 2 * half + 1
    if any(n < size for n in density.shape):
        raise ValueError(f"Window of {size} nodes does not fit in the interior {density.shape}")
    local = uniform_filter((density - rho) ** 2, size=size, mode="nearest")
    return float(np.max(_valid(local, half)))
