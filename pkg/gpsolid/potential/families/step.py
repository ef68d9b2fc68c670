"""Step (hard-core) potential c·1(|x| <= R0)"""

from typing import Any, Dict, List, Optional

import numpy as np

from gpsolid.potential.families.base import BasePotentialFamily, ball_volume


class StepFamily(BasePotentialFamily):
    """Constant height c inside radius R0, zero outside."""

    name = "step"
    default_params = {"c": 1.0, "R0": 1.0}

    def validate(self, params: Dict[str, Any], dimension: int) -> List[str]:
        errors = super().validate(params, dimension)
        if params.get("c", 0) <= 0:
            errors.append("step: c must be positive")
        if params.get("R0", 0) <= 0:
            errors.append("step: R0 must be positive")
        return errors

    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        return np.where(radius <= params["R0"], float(params["c"]), 0.0)

    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        # eps * delta_r * delta_r peaks at eps/|B_r|; half of c keeps w2 >= 0 pointwise
        r = 0.5 * params["R0"]
        return {
            "epsilon": 0.5 * params["c"] * ball_volume(r, dimension),
            "r": r,
            "s": float(dimension + 4),
            "kappa": max(2.0 * params["R0"], 2.0 * r),
            "contact": 0.0,
        }

    def support(self, params: Dict[str, Any]) -> Optional[float]:
        return float(params["R0"])
