"""
Adaptive trapezoid quadrature.

The trapezoid rule is refined by interval doubling, reusing every node
already evaluated. A short Romberg table sits on top of the doubling
sequence; whichever of the plain and extrapolated estimates settles first
is returned. Integrands may be vector valued along leading axes (one row
per wavenumber), in which case the tolerance applies to the largest entry.
"""

import logging
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from gpsolid.config.constants import (
    QUAD_MAX_NODES,
    QUAD_MIN_INTERVALS,
    QUAD_ROMBERG_DEPTH,
    QUAD_RTOL,
)
from gpsolid.errors import QuadratureError

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


def integrate_panel(
    func: Integrand,
    a: float,
    b: float,
    rtol: float = QUAD_RTOL,
    max_nodes: int = QUAD_MAX_NODES,
    min_intervals: int = QUAD_MIN_INTERVALS,
) -> Tuple[np.ndarray, float]:
    """
    Integrate func over [a, b] along its last axis.

    Args:
        func: Maps nodes of shape (m,) to values of shape (..., m)
        a, b: Panel bounds
        rtol: Relative change that ends the doubling
        max_nodes: Node budget; exceeding it raises QuadratureError
        min_intervals: Intervals of the first level

    Returns:
        (integral, error estimate)
    """
    if b <= a:
        sample = np.asarray(func(np.array([a], dtype=float)))
        return np.zeros(sample.shape[:-1]), 0.0

    n = min_intervals
    h = (b - a) / n
    nodes = np.linspace(a, b, n + 1)
    trap = trapezoid(func(nodes), dx=h, axis=-1)
    row = [trap]

    while True:
        if 2 * n + 1 > max_nodes:
            raise QuadratureError(
                f"Quadrature on [{a:g}, {b:g}] did not reach rtol={rtol:g} within {max_nodes} nodes"
            )
        mids = a + h * (np.arange(n) + 0.5)
        new_trap = 0.5 * trap + 0.5 * h * np.sum(func(mids), axis=-1)
        n *= 2
        h *= 0.5

        new_row = [new_trap]
        for j in range(1, min(QUAD_ROMBERG_DEPTH, len(row)) + 1):
            new_row.append(new_row[j - 1] + (new_row[j - 1] - row[j - 1]) / (4 ** j - 1))

        scale = max(float(np.max(np.abs(new_row[-1]))), float(np.max(np.abs(new_trap))))
        trap_err = float(np.max(np.abs(new_trap - trap)))
        romb_err = float(np.max(np.abs(new_row[-1] - row[-1])))

        if trap_err <= rtol * scale:
            return new_trap, trap_err
        if romb_err <= rtol * scale:
            return new_row[-1], romb_err

        trap, row = new_trap, new_row


def integrate_panels(
    func: Integrand,
    edges: Sequence[float],
    rtol: float = QUAD_RTOL,
    max_nodes: int = QUAD_MAX_NODES,
) -> Tuple[np.ndarray, float]:
    """Sum of integrate_panel over consecutive edges."""
    total, error = None, 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, err = integrate_panel(func, a, b, rtol=rtol, max_nodes=max_nodes)
        total = value if total is None else total + value
        error += err
    if total is None:
        raise ValueError("integrate_panels needs at least two edges")
    return total, error
