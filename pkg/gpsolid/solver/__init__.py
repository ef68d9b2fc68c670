"""
Minimizers for the grand-canonical, canonical and vortex problems.
"""

from gpsolid.solver.canonical import minimize_canonical
from gpsolid.solver.descent import DescentProblem, Evaluation, run_descent
from gpsolid.solver.grand_canonical import constant_candidate, density_band, minimize_grand_canonical
from gpsolid.solver.options import MinimizationResult, MinimizeOptions, SeedStrategy
from gpsolid.solver.preconditioner import SobolevPreconditioner
from gpsolid.solver.seeds import build_seeds, resolve_k0
from gpsolid.solver.vortex import disk_grid, disk_masks, solve_vortex_disk

__all__ = [
    "MinimizeOptions",
    "MinimizationResult",
    "SeedStrategy",
    "constant_candidate",
    "density_band",
    "minimize_grand_canonical",
    "minimize_canonical",
    "solve_vortex_disk",
    "disk_grid",
    "disk_masks",
    "build_seeds",
    "resolve_k0",
    "DescentProblem",
    "Evaluation",
    "run_descent",
    "SobolevPreconditioner",
]
