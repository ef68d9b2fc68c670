"""
Canonical minimization: min E(u) over the sphere h^d Σ|u|^2 = lambda.

Steps follow the preconditioned gradient projected onto the tangent space
(in the preconditioner's metric) and are renormalized afterwards. The
multiplier is the Rayleigh quotient <u, (-Δ + w*|u|^2)u>/lambda.
"""

import logging
import math
from functools import partial
from typing import Optional

import numpy as np

from gpsolid.lattice import Field, Grid, evaluate
from gpsolid.potential import Potential, moments
from gpsolid.solver.descent import DescentProblem, Evaluation, inner, run_descent
from gpsolid.solver.grand_canonical import require_stability
from gpsolid.solver.multistart import has_sign_change, run_seeds, select_best
from gpsolid.solver.options import MinimizationResult, MinimizeOptions
from gpsolid.solver.preconditioner import SobolevPreconditioner
from gpsolid.solver.seeds import build_seeds

logger = logging.getLogger(__name__)


def rayleigh_multiplier(values: np.ndarray, gradient: np.ndarray, cell_volume: float, mass: float) -> float:
    """<u, ½ gradE>h^d / mass, gradE the energy gradient at u."""
    return 0.5 * inner(values, gradient) * cell_volume / mass


class CanonicalProblem(DescentProblem):
    supports_conjugate = False

    def __init__(self, p: Potential, lam: float, grid: Grid, opts: MinimizeOptions):
        self.potential = p
        self.lam = lam
        self.grid = grid
        self.cell_volume = grid.cell_volume
        reference_mu = lam / grid.volume * moments(p).integral
        self.tolerance = opts.grad_tol * max(1.0, reference_mu)
        self.preconditioner = SobolevPreconditioner(grid, opts.preconditioner_shift or max(reference_mu, 1.0))

    def retract(self, values: np.ndarray) -> np.ndarray:
        mass = self.cell_volume * float(np.sum(np.abs(values) ** 2))
        return values * math.sqrt(self.lam / mass)

    def evaluate(self, values: np.ndarray) -> Evaluation:
        energy_value, _, gradient = evaluate(values, self.grid, self.potential, 0.0)
        multiplier = rayleigh_multiplier(values, gradient, self.cell_volume, self.lam)
        residual = float(np.max(np.abs(0.5 * gradient - multiplier * values)))
        return Evaluation(value=energy_value, gradient=gradient, residual=residual)

    def search_direction(self, values: np.ndarray, gradient: np.ndarray) -> np.ndarray:
        z = self.preconditioner(gradient)
        pu = self.preconditioner(values)
        return z - (inner(values, z) / inner(values, pu)) * pu


def _descend(p: Potential, lam: float, grid: Grid, opts: MinimizeOptions, label: str, values: np.ndarray) -> MinimizationResult:
    problem = CanonicalProblem(p, lam, grid, opts)
    outcome = run_descent(problem, values, opts, label)
    history = list(outcome.history)
    iterations = outcome.iterations

    if has_sign_change(outcome.values):
        logger.info(f"SOLVE | {label}: sign change, restarting from |u|")
        outcome = run_descent(problem, np.abs(outcome.values), opts, label + "+abs")
        history += outcome.history
        iterations += outcome.iterations

    values = outcome.values
    energy_value, _, gradient = evaluate(values, grid, p, 0.0)
    multiplier = rayleigh_multiplier(values, gradient, grid.cell_volume, lam)
    field = Field(grid, values, "real")
    return MinimizationResult(
        field=field,
        energy=energy_value,
        free_energy=energy_value - multiplier * field.mass,
        mass=field.mass,
        multiplier=multiplier,
        residual=outcome.evaluation.residual,
        iterations=iterations,
        converged=outcome.converged,
        seed=label,
        history=history,
    )


def minimize_canonical(
    p: Potential, lam: float, grid: Grid, opts: Optional[MinimizeOptions] = None
) -> MinimizationResult:
    """
    Lowest energy at fixed mass lam over the seeds in opts.

    Seeds are built at the mean density lam/|Omega| and projected onto the
    sphere before descent. Ranking is by energy (the mass is the same for
    every seed); free_energy uses each result's own multiplier.
    """
    if lam <= 0:
        raise ValueError(f"Canonical minimization needs lambda > 0, got {lam}")
    opts = opts or MinimizeOptions()
    require_stability(p, opts)

    seeds = build_seeds(p, grid, lam / grid.volume, opts, include_constant=True)
    logger.info(
        f"SOLVE | canonical {p.name} lambda={lam:g} shape={grid.shape} "
        f"bc={grid.boundary.value} seeds={[s[0] for s in seeds]}"
    )
    results = run_seeds(partial(_descend, p, lam, grid, opts), seeds, opts.jobs)
    ranked = [r.model_copy(update={"free_energy": r.energy}) for r in results]
    winner = select_best(ranked)
    best = next(r for r in results if r.seed == winner.seed)
    best = best.model_copy(update={"seed_free_energies": {r.seed: r.free_energy for r in results}})

    if not best.converged:
        logger.warning(f"SOLVE | lambda={lam:g}: best seed {best.seed} did not converge (residual {best.residual:.3e})")
    return best
