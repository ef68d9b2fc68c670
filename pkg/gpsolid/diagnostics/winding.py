"""
Winding degree of a 2D complex field around a circle.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from gpsolid.config.constants import DEGREE_MIN_SAMPLES, DEGREE_MODULUS_TOL
from gpsolid.errors import DegreeUndefinedError
from gpsolid.lattice import Field

logger = logging.getLogger(__name__)


def circle_samples(radius: float, spacing: float, samples: Optional[int] = None) -> int:
    """At least DEGREE_MIN_SAMPLES points, about one per h of arc, rounded up to a multiple of 8."""
    wanted = samples or max(DEGREE_MIN_SAMPLES, math.ceil(2.0 * math.pi * radius / spacing))
    return 8 * math.ceil(max(wanted, DEGREE_MIN_SAMPLES) / 8)


def sample_circle(f: Field, radius: float, center: Sequence[float] = (0.0, 0.0), samples: Optional[int] = None) -> np.ndarray:
    """Bilinear interpolation of f at equally spaced points of the circle."""
    if f.grid.dimension != 2:
        raise ValueError("Winding degree needs a 2D field")
    if radius <= 0:
        raise ValueError(f"Circle radius must be positive, got {radius}")
    n = circle_samples(radius, f.grid.spacing, samples)
    theta = 2.0 * math.pi * np.arange(n) / n
    points = np.column_stack([center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)])

    axes = (f.grid.coordinates(0), f.grid.coordinates(1))
    values = np.asarray(f.values)
    try:
        real = RegularGridInterpolator(axes, np.real(values))(points)
        imag = RegularGridInterpolator(axes, np.imag(values))(points)
    except ValueError as e:
        raise ValueError(f"Circle of radius {radius:g} leaves the grid: {e}") from e
    return real + 1j * imag


def winding_degree(f: Field, radius: float, center: Sequence[float] = (0.0, 0.0), samples: Optional[int] = None) -> int:
    """
    (1/2pi) Σ of phase increments around the circle, each wrapped to (-pi, pi].

    Raises:
        DegreeUndefinedError: |f| vanishes (relative to max|f|) on the circle
    """
    z = sample_circle(f, radius, center, samples)
    scale = float(np.max(np.abs(f.values)))
    if scale == 0.0 or np.min(np.abs(z)) < DEGREE_MODULUS_TOL * scale:
        raise DegreeUndefinedError(f"Field vanishes on the circle of radius {radius:g}")

    increments = np.angle(np.roll(z, -1) / z)
    total = float(np.sum(increments)) / (2.0 * math.pi)
    degree = int(round(total))
    logger.debug(f"DIAG | winding on r={radius:g}: {total:.12g} -> {degree}")
    return degree
