"""
Preconditioned descent with Armijo backtracking.

Every accepted step satisfies F(new) <= F(old) - c1·t·slope, so the
recorded history is non-increasing. A run stops as converged when the
residual is within tolerance and the objective has settled (relative change
below STALL_RTOL over STALL_WINDOW steps, or no further decrease is
representable).
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

from gpsolid.config.constants import STALL_RTOL, STALL_WINDOW
from gpsolid.solver.options import MinimizeOptions

logger = logging.getLogger(__name__)

# Backtracking gives up below this step length
_MIN_STEP = 1e-14


@dataclass
class Evaluation:
    value: float
    gradient: np.ndarray
    residual: float


@dataclass
class DescentOutcome:
    values: np.ndarray
    evaluation: Evaluation
    iterations: int
    converged: bool
    history: List[float] = field(default_factory=list)


def inner(a: np.ndarray, b: np.ndarray) -> float:
    """Re Σ conj(a) b"""
    return float(np.real(np.vdot(a, b)))


class DescentProblem(ABC):
    """An objective with gradient, a preconditioner and an optional constraint."""

    cell_volume: float = 1.0
    tolerance: float = 1e-6
    supports_conjugate: bool = True
    preconditioner: Callable[[np.ndarray], np.ndarray] = staticmethod(lambda g: g)

    @abstractmethod
    def evaluate(self, values: np.ndarray) -> Evaluation:
        pass

    def search_direction(self, values: np.ndarray, gradient: np.ndarray) -> np.ndarray:
        """Preconditioned gradient; constrained problems project it."""
        return self.preconditioner(gradient)

    def retract(self, values: np.ndarray) -> np.ndarray:
        return values


def run_descent(problem: DescentProblem, start: np.ndarray, opts: MinimizeOptions, label: str = "") -> DescentOutcome:
    """Minimize problem from start. Non-convergence is reported, not raised."""
    values = problem.retract(np.array(start, copy=True))
    current = problem.evaluate(values)
    history = [current.value]
    step = opts.initial_step
    previous_z = previous_d = previous_g = None
    converged = current.residual == 0.0
    iterations = 0

    while not converged and iterations < opts.max_iters:
        iterations += 1
        z = problem.search_direction(values, current.gradient)
        d = z
        if opts.conjugate and problem.supports_conjugate and previous_d is not None:
            denom = inner(previous_g, previous_z)
            beta = max(0.0, inner(current.gradient, z - previous_z) / denom) if denom > 0 else 0.0
            d = z + beta * previous_d
            if inner(current.gradient, d) <= 0.0:
                d = z

        slope = inner(current.gradient, d) * problem.cell_volume
        if slope <= 0.0:
            converged = current.residual <= problem.tolerance
            break

        t = step
        accepted = None
        while t >= _MIN_STEP:
            trial = problem.retract(values - t * d)
            trial_eval = problem.evaluate(trial)
            if trial_eval.value <= current.value - opts.armijo_c1 * t * slope:
                accepted = (trial, trial_eval)
                break
            t *= opts.shrink

        if accepted is None:
            # no representable decrease left along d
            converged = current.residual <= problem.tolerance
            if opts.verbose:
                logger.info(f"DESCENT | {label} line search exhausted at it={iterations}")
            break

        previous_z, previous_d, previous_g = z, d, current.gradient
        values, current = accepted
        history.append(current.value)
        step = min(t / opts.shrink, opts.max_step)

        if current.residual <= problem.tolerance:
            if len(history) > STALL_WINDOW:
                reference = history[-1 - STALL_WINDOW]
                change = abs(reference - current.value)
                if change <= STALL_RTOL * max(1.0, abs(current.value)):
                    converged = True

        if opts.verbose and iterations % 500 == 0:
            logger.info(
                f"DESCENT | {label} it={iterations} value={current.value:.12g} residual={current.residual:.3e}"
            )

    if not converged:
        logger.warning(
            f"DESCENT | {label} not converged after {iterations} iterations "
            f"(residual {current.residual:.3e}, tol {problem.tolerance:.3e})"
        )
    return DescentOutcome(values=values, evaluation=current, iterations=iterations,
                          converged=converged, history=history)
