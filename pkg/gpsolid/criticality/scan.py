"""
Radial k-scans of w_hat and their minimization.

Every bound on the critical chemical potential is an infimum over k of a
ratio whose denominator may vanish. Ratios with a non-positive denominator
are +inf by convention, set explicitly rather than through floating-point
division.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import minimize_scalar

from gpsolid.config.constants import KGRID_POINTS
from gpsolid.errors import ScanIncompleteError
from gpsolid.potential import Potential, default_kmax, fourier_transform, radial_kgrid

logger = logging.getLogger(__name__)


class ScanOptions(BaseModel):
    """Radial k-grid of a criticality run."""

    model_config = ConfigDict(extra="forbid")

    k_max: Optional[float] = Field(None, gt=0, description="Upper end of the scan; from the moments of w if unset")
    points: int = Field(KGRID_POINTS, ge=16, description="Grid points on (0, k_max]")

    def kgrid(self, p: Potential) -> np.ndarray:
        return radial_kgrid(self.k_max or default_kmax(p), self.points)


@dataclass(frozen=True)
class KScan:
    """w_hat sampled on a radial grid, with w_hat(0) alongside."""

    k: np.ndarray
    w_hat: np.ndarray
    w0: float

    @classmethod
    def compute(cls, p: Potential, kgrid: Optional[np.ndarray] = None) -> "KScan":
        if kgrid is None:
            kgrid = radial_kgrid(default_kmax(p))
        kgrid = np.asarray(kgrid, dtype=float)
        values = fourier_transform(p, np.concatenate([[0.0], kgrid]))
        return cls(k=kgrid, w_hat=values[1:], w0=float(values[0]))


def safe_ratio(numerator, denominator):
    """numerator/denominator where denominator > 0, +inf elsewhere."""
    numerator = np.asarray(numerator, dtype=float)
    denominator = np.asarray(denominator, dtype=float)
    positive = denominator > 0
    return np.where(positive, numerator / np.where(positive, denominator, 1.0), np.inf)


def minimize_on_grid(
    objective: Callable[[np.ndarray], np.ndarray],
    values: np.ndarray,
    k: np.ndarray,
    label: str,
) -> Tuple[float, Optional[float]]:
    """
    Grid minimum of a scan objective, refined by golden-section search.

    Args:
        objective: Vectorized objective, used for the refinement
        values: objective evaluated on k
        k: The scan grid
        label: Name used in log and error messages

    Returns:
        (minimum, minimizing k), or (+inf, None) when the objective is
        infinite everywhere on the grid
    """
    if not np.any(np.isfinite(values)):
        return float("inf"), None

    i = int(np.argmin(values))
    if i == len(k) - 1:
        raise ScanIncompleteError(
            f"{label}: scan minimum at k_max={k[-1]:.4g}; extend the k-grid"
        )

    best, best_k = float(values[i]), float(k[i])
    lower = float(k[i - 1]) if i > 0 else 0.5 * float(k[0])
    upper = float(k[i + 1])

    def scalar(x: float) -> float:
        return float(objective(np.array([x]))[0])

    try:
        res = minimize_scalar(scalar, bracket=(lower, best_k, upper), method="golden",
                              options={"xtol": 1e-10})
        if np.isfinite(res.fun) and res.fun < best and lower <= res.x <= upper:
            best, best_k = float(res.fun), float(res.x)
    except ValueError as e:
        # flat neighbourhood: no strict bracket, the grid value stands
        logger.debug(f"CRIT | {label}: golden refinement skipped ({e})")

    return best, best_k
