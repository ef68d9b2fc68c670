"""Gaussian potential c·exp(-|x|^2 / (2 sigma^2))"""

import math
from typing import Any, Dict, List, Optional

import numpy as np

from gpsolid.potential.families.base import BasePotentialFamily


class GaussianFamily(BasePotentialFamily):
    """Positive-definite potential: its transform is a positive Gaussian."""

    name = "gaussian"
    default_params = {"c": 1.0, "sigma": 1.0}

    def validate(self, params: Dict[str, Any], dimension: int) -> List[str]:
        errors = super().validate(params, dimension)
        if params.get("c", 0) <= 0:
            errors.append("gaussian: c must be positive")
        if params.get("sigma", 0) <= 0:
            errors.append("gaussian: sigma must be positive")
        return errors

    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        sigma = params["sigma"]
        return params["c"] * np.exp(-(radius ** 2) / (2.0 * sigma ** 2))

    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        sigma = params["sigma"]
        return {
            "epsilon": None,
            "r": 0.0,
            "s": float(dimension + 4),
            "kappa": 6.0 * sigma * max(1.0, float(params["c"])),
            "contact": 0.0,
        }

    def support(self, params: Dict[str, Any]) -> Optional[float]:
        # tail drops below 1e-16 of its peak
        return params["sigma"] * math.sqrt(2.0 * math.log(1e16))
