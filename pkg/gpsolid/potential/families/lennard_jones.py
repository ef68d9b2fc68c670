"""Truncated Lennard-Jones potential min(A, |x|^-12 - |x|^-6)"""

import math
from typing import Any, Dict, List, Optional

import numpy as np

from gpsolid.potential.families.base import BasePotentialFamily, ball_volume


def truncation_radius(cap: float) -> float:
    """Radius where |x|^-12 - |x|^-6 equals the cap A."""
    t = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * cap))
    return t ** (-1.0 / 6.0)


class TruncatedLennardJonesFamily(BasePotentialFamily):
    """Lennard-Jones with the core flattened at height A; has a negative well."""

    name = "truncated-lennard-jones"
    default_params = {"A": 10.0}

    def validate(self, params: Dict[str, Any], dimension: int) -> List[str]:
        errors = super().validate(params, dimension)
        if params.get("A", 0) <= 0:
            errors.append("truncated-lennard-jones: A must be positive")
        return errors

    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        x_cap = truncation_radius(params["A"])
        safe = np.maximum(radius, x_cap)
        values = safe ** -12 - safe ** -6
        return np.where(radius <= x_cap, float(params["A"]), values)

    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        r = 0.25
        return {
            "epsilon": 0.1 * params["A"] * ball_volume(r, dimension),
            "r": r,
            "s": 6.0,
            "kappa": 1.0,
            "contact": 0.0,
        }

    def breakpoints(self, params: Dict[str, Any]) -> List[float]:
        return [truncation_radius(params["A"])]
