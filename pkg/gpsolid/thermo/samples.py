"""
Per-volume results of finite-box runs, and the curves built from them.
"""

from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from gpsolid.lattice import Boundary
from gpsolid.solver import MinimizationResult


class Branch(str, Enum):
    FLUID = "fluid-seed"
    SOLID = "solid-seed"


class ThermoSample(BaseModel):
    """F/|Omega|, mass/|Omega| and E/|Omega| of one box at one mu."""

    mu: float
    L: float = Field(..., gt=0, description="Box side length")
    bc: Boundary
    branch: Branch
    f: float = Field(..., description="Free energy per volume")
    rho: float = Field(..., ge=0, description="Mass per volume")
    e: float = Field(..., description="Energy per volume")
    converged: bool = True
    residual: float = 0.0
    iterations: int = 0
    seed: str = ""

    @classmethod
    def from_result(cls, result: MinimizationResult, mu: float, L: float, bc: Boundary, branch: Branch) -> "ThermoSample":
        volume = result.volume
        return cls(
            mu=mu,
            L=L,
            bc=bc,
            branch=branch,
            f=result.free_energy / volume,
            rho=result.mass / volume,
            e=result.energy / volume,
            converged=result.converged,
            residual=result.residual,
            iterations=result.iterations,
            seed=result.seed,
        )

    def row(self) -> Dict[str, object]:
        return {
            "mu": self.mu,
            "L": self.L,
            "bc": self.bc.value,
            "branch": self.branch.value,
            "f_L": self.f,
            "rho_L": self.rho,
            "e_L": self.e,
        }


class CurvePoint(BaseModel):
    """Extrapolated thermodynamic data at one mu."""

    mu: float
    f: float
    rho: float
    e: float
    uncertainty: float = Field(..., ge=0, description="Gap between the Dirichlet and Neumann limits")
    low_confidence: bool = False
    f_by_bc: Dict[str, float] = Field(default_factory=dict)
    rho_from_f: Optional[float] = Field(None, description="-df/dmu by central differences")


class ThermoCurve(BaseModel):
    points: List[CurvePoint]

    @property
    def mu(self) -> np.ndarray:
        return np.array([pt.mu for pt in self.points])

    @property
    def f(self) -> np.ndarray:
        return np.array([pt.f for pt in self.points])

    @property
    def rho(self) -> np.ndarray:
        return np.array([pt.rho for pt in self.points])

    @property
    def uncertainty(self) -> np.ndarray:
        return np.array([pt.uncertainty for pt in self.points])

    def rows(self) -> List[Dict[str, object]]:
        return [{"mu": pt.mu, "f": pt.f, "rho": pt.rho, "uncertainty": pt.uncertainty} for pt in self.points]


def best_per_cell(samples: List[ThermoSample]) -> Dict[tuple, ThermoSample]:
    """The lower-free-energy branch for every (mu, L, bc)."""
    best: Dict[tuple, ThermoSample] = {}
    for s in samples:
        key = (s.mu, s.L, s.bc)
        if key not in best or s.f < best[key].f:
            best[key] = s
    return best
