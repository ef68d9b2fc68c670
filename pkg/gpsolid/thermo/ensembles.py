"""
Canonical cross-checks of the grand-canonical thermodynamics.
"""

import logging
from typing import List, Optional, Sequence

from pydantic import BaseModel

from gpsolid.lattice import box_grid
from gpsolid.potential import Potential
from gpsolid.solver import MinimizeOptions, minimize_canonical, minimize_grand_canonical

logger = logging.getLogger(__name__)


class RoundTrip(BaseModel):
    mu: float
    lam: float
    multiplier: float
    relative_gap: float
    converged: bool


class CanonicalPoint(BaseModel):
    rho: float
    e: float
    multiplier: float
    converged: bool


def ensemble_round_trip(
    p: Potential,
    mu: float,
    L: float,
    bc: str,
    spacing: float,
    opts: Optional[MinimizeOptions] = None,
) -> RoundTrip:
    """
    Grand-canonical solve at mu, then a canonical solve at its mass; the
    canonical multiplier should come back close to mu.
    """
    grid = box_grid([L] * p.dimension, spacing, bc)
    grand = minimize_grand_canonical(p, mu, grid, opts)
    canonical = minimize_canonical(p, grand.mass, grid, opts)
    gap = abs(canonical.multiplier - mu) / abs(mu)
    logger.info(f"THERMO | round trip mu={mu:g}: lambda={grand.mass:.8g} multiplier={canonical.multiplier:.8g} gap={gap:.3%}")
    return RoundTrip(
        mu=mu,
        lam=grand.mass,
        multiplier=canonical.multiplier,
        relative_gap=gap,
        converged=grand.converged and canonical.converged,
    )


def canonical_energy_curve(
    p: Potential,
    rho_list: Sequence[float],
    L: float,
    bc: str,
    spacing: float,
    opts: Optional[MinimizeOptions] = None,
) -> List[CanonicalPoint]:
    """e_L(rho) = E/|Omega| at fixed mass rho|Omega|, one canonical solve per rho."""
    grid = box_grid([L] * p.dimension, spacing, bc)
    points = []
    for rho in rho_list:
        result = minimize_canonical(p, rho * grid.volume, grid, opts)
        points.append(
            CanonicalPoint(
                rho=rho,
                e=result.energy / grid.volume,
                multiplier=result.multiplier,
                converged=result.converged,
            )
        )
    return points
