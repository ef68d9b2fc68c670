"""
Grand-canonical minimization: min over u of F(u) = E(u) - mu·mass(u).
"""

import logging
import math
from functools import partial
from typing import Optional, Tuple

import numpy as np

from gpsolid.config.constants import DENSITY_BAND_FACTOR
from gpsolid.lattice import Field, Grid, check_energy_floor, evaluate
from gpsolid.potential import Potential, Stability, moments, stability_check
from gpsolid.solver.descent import DescentProblem, Evaluation, run_descent
from gpsolid.solver.multistart import has_sign_change, run_seeds, select_best
from gpsolid.solver.options import MinimizationResult, MinimizeOptions
from gpsolid.solver.preconditioner import SobolevPreconditioner
from gpsolid.solver.seeds import build_seeds

logger = logging.getLogger(__name__)


def constant_candidate(p: Potential, mu: float, grid: Grid) -> Field:
    """The fluid state u ≡ (mu/∫w)^{1/2} on the stored nodes."""
    if mu <= 0:
        raise ValueError(f"constant_candidate needs mu > 0, got {mu}")
    integral = moments(p).integral
    return Field(grid, np.full(grid.shape, math.sqrt(mu / integral)), "real")


def density_band(mu: float) -> Tuple[float, float]:
    """Range expected for the mean density of a grand-canonical minimizer."""
    return mu / DENSITY_BAND_FACTOR, DENSITY_BAND_FACTOR * mu


def require_stability(p: Potential, opts: MinimizeOptions) -> None:
    if opts.allow_indeterminate:
        return
    verdict = stability_check(p)
    if verdict is not Stability.STABLE_SUFFICIENT:
        raise ValueError(
            f"Stability of {p!r} is {verdict.value}; set allow_indeterminate to run anyway"
        )


class GrandCanonicalProblem(DescentProblem):
    def __init__(self, p: Potential, mu: float, grid: Grid, opts: MinimizeOptions):
        self.potential = p
        self.mu = mu
        self.grid = grid
        self.cell_volume = grid.cell_volume
        self.tolerance = opts.grad_tol * max(1.0, mu)
        self.preconditioner = SobolevPreconditioner(grid, opts.preconditioner_shift or max(mu, 1.0))

    def evaluate(self, values: np.ndarray) -> Evaluation:
        _, free, gradient = evaluate(values, self.grid, self.potential, self.mu)
        return Evaluation(value=free, gradient=gradient, residual=0.5 * float(np.max(np.abs(gradient))))


def descend_from(p: Potential, mu: float, grid: Grid, opts: MinimizeOptions, label: str, values: np.ndarray) -> MinimizationResult:
    problem = GrandCanonicalProblem(p, mu, grid, opts)
    outcome = run_descent(problem, values, opts, label)
    history = list(outcome.history)
    iterations = outcome.iterations

    if has_sign_change(outcome.values):
        # |u| never raises the energy; continue from there
        logger.info(f"SOLVE | {label}: sign change, restarting from |u|")
        outcome = run_descent(problem, np.abs(outcome.values), opts, label + "+abs")
        history += outcome.history
        iterations += outcome.iterations

    energy_value, free, _ = evaluate(outcome.values, grid, p, mu)
    field = Field(grid, outcome.values, "real")
    return MinimizationResult(
        field=field,
        energy=energy_value,
        free_energy=free,
        mass=field.mass,
        multiplier=mu,
        residual=outcome.evaluation.residual,
        iterations=iterations,
        converged=outcome.converged,
        seed=label,
        history=history,
    )


def minimize_grand_canonical(
    p: Potential, mu: float, grid: Grid, opts: Optional[MinimizeOptions] = None
) -> MinimizationResult:
    """
    Lowest free energy over the seeds in opts (the constant seed always included).

    For mu <= 0 the minimizer is u ≡ 0 and is returned without descent.
    Non-convergence is reported through result.converged.
    """
    opts = opts or MinimizeOptions()
    require_stability(p, opts)

    if mu <= 0:
        zero = Field(grid, np.zeros(grid.shape), "real")
        return MinimizationResult(
            field=zero, energy=0.0, free_energy=0.0, mass=0.0, multiplier=mu,
            residual=0.0, iterations=0, converged=True, seed="zero",
            history=[0.0], seed_free_energies={"zero": 0.0},
        )

    density = mu / moments(p).integral
    seeds = build_seeds(p, grid, density, opts, include_constant=True)
    logger.info(
        f"SOLVE | grand-canonical {p.name} mu={mu:g} shape={grid.shape} "
        f"bc={grid.boundary.value} seeds={[s[0] for s in seeds]}"
    )
    results = run_seeds(partial(descend_from, p, mu, grid, opts), seeds, opts.jobs)
    best = select_best(results)
    check_energy_floor(best.free_energy, grid, p, mu)

    if not best.converged:
        logger.warning(f"SOLVE | mu={mu:g}: best seed {best.seed} did not converge (residual {best.residual:.3e})")
    low, high = density_band(mu)
    if not low <= best.mean_density <= high:
        logger.warning(f"SOLVE | mu={mu:g}: mean density {best.mean_density:.6g} outside [{low:.6g}, {high:.6g}]")
    return best
