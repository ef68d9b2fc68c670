"""
Criticality report: every bound for one potential from a single k-scan.
"""

import logging
import math
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from gpsolid.criticality.bounds import (
    instability_threshold,
    lower_bound_general,
    lower_bound_nonneg,
    lower_bound_radial,
    mu_one,
    pohozaev_margin,
)
from gpsolid.criticality.scan import KScan
from gpsolid.potential import Potential

logger = logging.getLogger(__name__)


class CriticalityReport(BaseModel):
    """Bounds on mu_c and linear-instability data of the constant solution."""

    mu_star: float = Field(..., description="Linear-instability threshold (+inf when w_hat >= 0)")
    k0: Optional[float] = Field(None, description="Wavenumber attaining mu_star")
    mu_lb_general: float = Field(..., description="General lower bound from (epsilon, r)")
    alpha: float = Field(..., description="(∫|w|)^{1/2} max(eps^{-1/2}, r)")
    mu_lb_radial: Optional[float] = Field(None, description="Radial bound, None if s <= d+2")
    mu_lb_nonneg: Optional[float] = Field(None, description="Bound for w >= 0, None otherwise")
    mu_one: Optional[float] = Field(None, description="d∫w/∫|x|^2|w|")
    pohozaev_margin: float = Field(..., ge=0.0)
    ordering_ok: bool = True

    def lower_bounds(self) -> Dict[str, Optional[float]]:
        return {
            "mu_lb_general": self.mu_lb_general,
            "mu_lb_radial": self.mu_lb_radial,
            "mu_lb_nonneg": self.mu_lb_nonneg,
        }

    def best_lower_bound(self) -> float:
        finite = [v for v in self.lower_bounds().values() if v is not None and math.isfinite(v)]
        return max(finite) if finite else 0.0

    def rows(self) -> List[Dict[str, object]]:
        """One row per bound: name, value, k0, applicability."""
        rows = [{"name": "mu_star", "value": self.mu_star, "k0": self.k0, "applicable": True}]
        for name, value in self.lower_bounds().items():
            rows.append({"name": name, "value": value, "k0": None, "applicable": value is not None})
        rows.append({"name": "mu_one", "value": self.mu_one, "k0": None, "applicable": self.mu_one is not None})
        rows.append({"name": "alpha", "value": self.alpha, "k0": None, "applicable": True})
        rows.append({"name": "pohozaev_margin", "value": self.pohozaev_margin, "k0": None, "applicable": True})
        return rows


def criticality_report(p: Potential, kgrid: Optional[np.ndarray] = None) -> CriticalityReport:
    """Evaluate all bounds and check that the finite lower bounds sit below mu_star."""
    scan = KScan.compute(p, kgrid)
    mu_star, k0 = instability_threshold(p, scan=scan)
    general, alpha = lower_bound_general(p, scan=scan)

    report = CriticalityReport(
        mu_star=mu_star,
        k0=k0,
        mu_lb_general=general,
        alpha=alpha,
        mu_lb_radial=lower_bound_radial(p),
        mu_lb_nonneg=lower_bound_nonneg(p, scan=scan),
        mu_one=mu_one(p),
        pohozaev_margin=pohozaev_margin(p, scan=scan),
    )

    if math.isfinite(mu_star):
        for name, value in report.lower_bounds().items():
            if value is not None and math.isfinite(value) and value > mu_star:
                logger.error(f"CRIT | {name}={value:.6g} exceeds mu_star={mu_star:.6g}")
                report.ordering_ok = False

    return report
