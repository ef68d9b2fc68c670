"""
Peak count and period of 1D density profiles.
"""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel
from scipy.signal import find_peaks

from gpsolid.config.constants import PEAK_THRESHOLD
from gpsolid.lattice import Field

logger = logging.getLogger(__name__)


class PeakReport(BaseModel):
    count: int
    period: Optional[float] = None
    positions: List[float] = []

    @property
    def span(self) -> Optional[float]:
        """period·count: the length the peaks tile."""
        return None if self.period is None else self.period * self.count


def peak_period(f: Field, threshold: float = PEAK_THRESHOLD) -> PeakReport:
    """
    Local maxima of |u|^2 higher than mean + threshold·(max - mean).

    The period is the mean spacing of consecutive peaks, absent with fewer
    than two.
    """
    if f.grid.dimension != 1:
        raise ValueError("peak_period needs a 1D field")
    density = f.density
    mean = float(np.mean(density))
    height = mean + threshold * (float(np.max(density)) - mean)
    indices, _ = find_peaks(density, height=height)
    x = f.grid.coordinates(0)[indices]

    period = None
    if len(x) >= 2:
        period = float((x[-1] - x[0]) / (len(x) - 1))
    logger.debug(f"DIAG | {len(x)} peaks, period={period}")
    return PeakReport(count=len(x), period=period, positions=x.tolist())
