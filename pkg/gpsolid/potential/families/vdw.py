"""Van der Waals type potential c/(1+|x|^6)"""

from typing import Any, Dict, List, Optional

import numpy as np

from gpsolid.potential.families.base import BasePotentialFamily


class VanDerWaalsFamily(BasePotentialFamily):
    """Soft core with a |x|^-6 tail; its transform changes sign."""

    name = "vdw"
    default_params = {"c": 1.0}

    def validate(self, params: Dict[str, Any], dimension: int) -> List[str]:
        errors = super().validate(params, dimension)
        if params.get("c", 0) <= 0:
            errors.append("vdw: c must be positive")
        return errors

    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        return params["c"] / (1.0 + radius ** 6)

    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        r = 0.5
        return {
            "epsilon": 0.25 * params["c"],
            "r": r,
            "s": 6.0,
            "kappa": max(1.0, float(params["c"]), 2.0 * r),
            "contact": 0.0,
        }
