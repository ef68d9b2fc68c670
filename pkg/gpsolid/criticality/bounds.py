"""
Closed-form bounds on the critical chemical potential.

mu_star is the linear-instability threshold of the constant solution and
bounds mu_c from above; the general, radial and non-negative bounds bound
it from below.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from gpsolid.config.constants import FOURIER_SIGN_TOL
from gpsolid.criticality.scan import KScan, minimize_on_grid, safe_ratio
from gpsolid.potential import Potential, convention_factor, fourier_transform, moments

logger = logging.getLogger(__name__)

GOLDEN_CONJUGATE = (math.sqrt(5.0) - 1.0) / 2.0


def _scan(p: Potential, kgrid, scan: Optional[KScan]) -> KScan:
    return scan if scan is not None else KScan.compute(p, kgrid)


def instability_threshold(
    p: Potential, kgrid: Optional[np.ndarray] = None, scan: Optional[KScan] = None
) -> Tuple[float, Optional[float]]:
    """
    Linear-instability threshold mu_star and its wavenumber k0.

    mu_star = min_k k^2 w_hat(0) / (2 w_hat_-(k)); (+inf, None) when
    w_hat >= -tol on the whole grid.
    """
    scan = _scan(p, kgrid, scan)
    tolerance = FOURIER_SIGN_TOL * abs(scan.w0)

    def objective(k, w_hat=None):
        w_hat = fourier_transform(p, k) if w_hat is None else w_hat
        negative_part = np.where(w_hat < -tolerance, -w_hat, 0.0)
        return safe_ratio(k ** 2 * scan.w0, 2.0 * negative_part)

    mu_star, k0 = minimize_on_grid(objective, objective(scan.k, scan.w_hat), scan.k, "mu_star")
    logger.info(f"CRIT | {p.name}: mu_star={mu_star:.6g} at k0={k0}")
    return mu_star, k0


def lower_bound_general(
    p: Potential, kgrid: Optional[np.ndarray] = None, scan: Optional[KScan] = None
) -> Tuple[float, float]:
    """
    General lower bound on mu_c from the declared (epsilon, r).

    Returns:
        (bound, alpha) with alpha = (∫|w|)^{1/2} max(eps^{-1/2}, r)
    """
    scan = _scan(p, kgrid, scan)
    alpha = math.sqrt(moments(p).absolute) * max(p.epsilon ** -0.5, p.r)
    smear = p.epsilon * convention_factor(p.dimension)

    def objective(k, w_hat=None):
        w_hat = fourier_transform(p, k) if w_hat is None else w_hat
        core = np.maximum(1.0 - k ** 2 * p.r ** 2 / 6.0, 0.0) ** 2
        denominator = (1.0 + alpha) * np.abs(scan.w0 - w_hat) - smear * core
        return safe_ratio(k ** 2 * scan.w0, 2.0 ** 2.5 * denominator)

    bound, _ = minimize_on_grid(objective, objective(scan.k, scan.w_hat), scan.k, "mu_lb_general")
    return bound, alpha


def mu_one(p: Potential) -> Optional[float]:
    """d ∫w / ∫|x|^2|w|, or None when the second moment diverges."""
    m = moments(p)
    if math.isinf(m.second):
        return None
    if m.second == 0.0:
        return float("inf")
    return p.dimension * m.integral / m.second


def lower_bound_radial(p: Potential) -> Optional[float]:
    """((sqrt5 - 1)/2)·d∫w/∫|x|^2|w|; None (not applicable) when s <= d+2."""
    if p.support is None and p.s <= p.dimension + 2:
        return None
    base = mu_one(p)
    if base is None:
        return None
    return GOLDEN_CONJUGATE * base


def lower_bound_nonneg(
    p: Potential, kgrid: Optional[np.ndarray] = None, scan: Optional[KScan] = None
) -> Optional[float]:
    """inf_k k^2 w_hat(0) / (2 (w_hat(0) - 2 w_hat(k))_+); None when w takes negative values."""
    if not p.is_nonnegative():
        return None
    scan = _scan(p, kgrid, scan)

    def objective(k, w_hat=None):
        w_hat = fourier_transform(p, k) if w_hat is None else w_hat
        return safe_ratio(k ** 2 * scan.w0, 2.0 * (scan.w0 - 2.0 * w_hat))

    bound, _ = minimize_on_grid(objective, objective(scan.k, scan.w_hat), scan.k, "mu_lb_nonneg")
    return bound


def pohozaev_margin(
    p: Potential, kgrid: Optional[np.ndarray] = None, scan: Optional[KScan] = None
) -> float:
    """
    Largest c with 2 w_hat - k w_hat' >= c w_hat^2 on the scan.

    Derivatives by central differences on [0] + kgrid. Returns 0 when the
    left side goes negative anywhere.
    """
    scan = _scan(p, kgrid, scan)
    k = np.concatenate([[0.0], scan.k])
    w_hat = np.concatenate([[scan.w0], scan.w_hat])
    tolerance = FOURIER_SIGN_TOL * abs(scan.w0)

    lhs = 2.0 * w_hat - k * np.gradient(w_hat, k)
    if np.any(lhs < -tolerance):
        return 0.0
    relevant = np.abs(w_hat) > tolerance
    if not np.any(relevant):
        return float("inf")
    return max(0.0, float(np.min(lhs[relevant] / w_hat[relevant] ** 2)))
