"""
Base Potential Family

Abstract base class for the named interaction families.
"""

import math
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

import numpy as np


def ball_volume(radius: float, dimension: int) -> float:
    """Volume of the ball of given radius in dimension 1 or 2."""
    if dimension == 1:
        return 2.0 * radius
    return math.pi * radius ** 2


class BasePotentialFamily(ABC):
    """
    Abstract base class for potential families.

    A family turns a parameter dict into the radial profile of the smooth
    tail and the declared constants (epsilon, r, s, kappa) of the potential.
    Families are stateless: everything a tail needs lives in ``params`` so
    potentials pickle cleanly into worker processes.
    """

    name: str = ""
    default_params: Dict[str, Any] = {}

    def prepare(self, params: Dict[str, Any], dimension: int) -> Dict[str, Any]:
        """Merge user parameters over the family defaults."""
        merged = dict(self.default_params)
        merged.update(params or {})
        return merged

    def validate(self, params: Dict[str, Any], dimension: int) -> List[str]:
        """Check parameter values. Returns a list of errors."""
        errors = []
        # underscore keys are derived data added by prepare()
        unknown = {k for k in params if not k.startswith("_")} - set(self.default_params)
        if unknown:
            errors.append(f"Unknown parameters for family '{self.name}': {sorted(unknown)}")
        return errors

    @abstractmethod
    def tail(self, radius: np.ndarray, params: Dict[str, Any]) -> np.ndarray:
        """
        Evaluate the smooth part of w at radial distances.

        Args:
            radius: Array of distances |x| >= 0
            params: Prepared family parameters

        Returns:
            Array of tail values, same shape as radius
        """
        pass

    @abstractmethod
    def declared(self, params: Dict[str, Any], dimension: int) -> Dict[str, Optional[float]]:
        """
        Family defaults for the declared constants.

        Returns:
            Dict with keys epsilon, r, s, kappa, contact. An epsilon of None
            means "a fixed fraction of the integral of w".
        """
        pass

    def support(self, params: Dict[str, Any]) -> Optional[float]:
        """Radius beyond which the tail vanishes, or None for power-law tails."""
        return None

    def breakpoints(self, params: Dict[str, Any]) -> List[float]:
        """Radii where the tail or its derivative jumps (quadrature panel edges)."""
        return []
