"""Pure contact potential eps0·delta_0"""

from typing import Any, Dict, List, Optional

import numpy as np

from gpsolid.potential.families.base import BasePotentialFamily


class ContactFamily(BasePotentialFamily):
    """Dirac at the origin only; the tail vanishes identically."""

    name = "pure-contact"
    default_params = {"epsilon0": 1.0}

    def validate(self, params: Dict[str, Any], dimension: int) -> List[str]:
        errors = super().validate(params, dimension)
        if params.get("epsilon0", 0) <= 0:
            errors.append("pure-contact: epsilon0 must be positive")
        return errors

    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        return np.zeros_like(radius, dtype=float)

    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        # any eps <= eps0 splits off; eps0/2 keeps the fluid state above -mu^2/(4 eps)|Omega|
        return {
            "epsilon": 0.5 * float(params["epsilon0"]),
            "r": 0.0,
            "s": float(dimension + 4),
            "kappa": 1.0,
            "contact": float(params["epsilon0"]),
        }

    def support(self, params: Dict[str, Any]) -> Optional[float]:
        return 0.0
