"""
Options and results for the minimizers.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from gpsolid.lattice import Field as LatticeField


class SeedStrategy(str, Enum):
    CONSTANT = "constant"
    COSINE = "cosine"
    RANDOM = "random"
    FILE = "file"


class MinimizeOptions(BaseModel):
    """Descent and multistart settings shared by every minimizer."""

    model_config = ConfigDict(extra="forbid")

    max_iters: int = Field(20000, gt=0, description="Iteration cap per seed")
    grad_tol: float = Field(1e-6, gt=0, description="Residual tolerance, scaled by max(1, mu)")
    armijo_c1: float = Field(1e-4, gt=0, lt=1, description="Sufficient-decrease constant")
    shrink: float = Field(0.5, gt=0, lt=1, description="Backtracking factor")
    initial_step: float = Field(0.5, gt=0)
    max_step: float = Field(8.0, gt=0)
    seeds: List[SeedStrategy] = Field(default_factory=lambda: [SeedStrategy.CONSTANT, SeedStrategy.COSINE])
    multistart: int = Field(0, ge=0, description="Extra random seeds on top of `seeds`")
    random_seed: int = 0
    seed_file: Optional[str] = None
    k0: Optional[float] = Field(None, gt=0, description="Cosine seed wavenumber; from criticality if unset")
    conjugate: bool = Field(True, description="Polak-Ribiere momentum on top of the preconditioned gradient")
    preconditioner_shift: Optional[float] = Field(None, gt=0)
    jobs: int = Field(1, ge=1, description="Worker processes for the seeds of one run")
    allow_indeterminate: bool = Field(True, description="Accept potentials whose stability test is indeterminate")
    verbose: bool = False


class MinimizationResult(BaseModel):
    """Outcome of one minimization (best over seeds)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    field: LatticeField
    energy: float
    free_energy: float
    mass: float
    multiplier: float
    residual: float
    iterations: int
    converged: bool
    seed: str = ""
    history: List[float] = Field(default_factory=list)
    seed_free_energies: Dict[str, float] = Field(default_factory=dict)

    @property
    def volume(self) -> float:
        return self.field.grid.volume

    @property
    def mean_density(self) -> float:
        return self.mass / self.volume
