"""
Discrete Legendre transform, phi(rho) and the critical chemical potential.

    e(rho) = max_mu { f(mu) + mu rho },   mu(rho) = argmax
    phi(rho) = e(rho)/rho - (rho/2)∫w
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from gpsolid.thermo.samples import Branch, ThermoCurve, ThermoSample

logger = logging.getLogger(__name__)


class LegendreTable(BaseModel):
    rho: List[float]
    e: List[float]
    mu_of_rho: List[float]
    phi: List[float] = Field(default_factory=list)

    def rows(self) -> List[Dict[str, float]]:
        phi = self.phi or [float("nan")] * len(self.rho)
        return [
            {"rho": r, "e": e, "mu_of_rho": m, "phi": p}
            for r, e, m, p in zip(self.rho, self.e, self.mu_of_rho, phi)
        ]


class CriticalBracket(BaseModel):
    """mu_c in [mu_lo, mu_hi]; found=False means mu_c >= mu_lo = largest mu on the grid."""

    mu_lo: float
    mu_hi: Optional[float]
    found: bool
    integral: float

    @property
    def rho_c(self) -> Tuple[float, Optional[float]]:
        """Bracket on the left critical density mu_c/∫w."""
        hi = self.mu_hi / self.integral if self.mu_hi is not None else None
        return self.mu_lo / self.integral, hi

    def describe(self) -> str:
        if not self.found:
            return f">= {self.mu_lo:g}"
        return f"[{self.mu_lo:g}, {self.mu_hi:g}]"


def legendre_transform(mu: Sequence[float], f: Sequence[float], rho: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """(max_mu {f + mu rho}, argmax mu) for every rho."""
    mu = np.asarray(mu, dtype=float)
    f = np.asarray(f, dtype=float)
    rho = np.asarray(rho, dtype=float)
    table = f[None, :] + rho[:, None] * mu[None, :]
    best = np.argmax(table, axis=1)
    return table[np.arange(len(rho)), best], mu[best]


def default_rho_grid(curve: ThermoCurve, n: Optional[int] = None) -> np.ndarray:
    """Uniform grid from 0 to the largest sampled density."""
    n = n or max(2 * len(curve.points) + 1, 3)
    top = float(np.max(curve.rho)) if len(curve.points) else 0.0
    return np.linspace(0.0, top, n)


def legendre_energy(curve: ThermoCurve, rho_grid: Optional[Sequence[float]] = None, integral: Optional[float] = None) -> LegendreTable:
    """
    e(rho) and mu(rho) from the extrapolated f(mu). With the integral of w
    the table also carries phi(rho).

    f(0) = 0 joins the transform when the curve starts above mu = 0, so
    e(0) = 0 and phi(0) = 0 hold on every curve.
    """
    rho = np.asarray(rho_grid, dtype=float) if rho_grid is not None else default_rho_grid(curve)
    mu, f = np.asarray(curve.mu, dtype=float), np.asarray(curve.f, dtype=float)
    if len(mu) and mu.min() > 0.0:
        mu, f = np.concatenate(([0.0], mu)), np.concatenate(([0.0], f))
    e, mu_of_rho = legendre_transform(mu, f, rho)
    table = LegendreTable(rho=rho.tolist(), e=e.tolist(), mu_of_rho=mu_of_rho.tolist())
    if integral is not None:
        table.phi = phi_values(rho, e, integral).tolist()
    return table


def phi_values(rho: np.ndarray, e: np.ndarray, integral: float) -> np.ndarray:
    """e/rho - rho∫w/2, with phi(0) = 0."""
    rho = np.asarray(rho, dtype=float)
    e = np.asarray(e, dtype=float)
    positive = rho > 0
    ratio = np.where(positive, e / np.where(positive, rho, 1.0), 0.0)
    return np.where(positive, ratio - 0.5 * rho * integral, 0.0)


def fluid_free_energy(mu, integral: float):
    """-mu^2/(2∫w) for mu > 0, 0 otherwise."""
    mu = np.maximum(np.asarray(mu, dtype=float), 0.0)
    return -(mu ** 2) / (2.0 * integral)


def departs_from_fluid(f: float, mu: float, uncertainty: float, integral: float) -> bool:
    value = float(fluid_free_energy(mu, integral))
    return value - f > uncertainty + 1e-12 * max(1.0, abs(value))


def phi_and_mu_c(curve: ThermoCurve, integral: float, rho_grid: Optional[Sequence[float]] = None) -> Tuple[LegendreTable, CriticalBracket]:
    """
    phi(rho) and the bracket [previous grid mu, first mu where f drops below
    the fluid value by more than its uncertainty].
    """
    table = legendre_energy(curve, rho_grid, integral)
    mu = curve.mu
    bracket = CriticalBracket(mu_lo=float(mu[-1]), mu_hi=None, found=False, integral=integral)
    for i, pt in enumerate(curve.points):
        if departs_from_fluid(pt.f, pt.mu, pt.uncertainty, integral):
            lower = float(mu[i - 1]) if i > 0 else 0.0
            bracket = CriticalBracket(mu_lo=lower, mu_hi=pt.mu, found=True, integral=integral)
            break

    if bracket.found:
        reentry = [
            pt.mu for pt in curve.points
            if pt.mu > bracket.mu_hi and not departs_from_fluid(pt.f, pt.mu, pt.uncertainty, integral)
        ]
        if reentry:
            logger.warning(f"THERMO | f returns to the fluid value at mu={reentry} above the bracket")
    logger.info(f"THERMO | mu_c {bracket.describe()}")
    return table, bracket


def critical_density(table: LegendreTable, bracket: CriticalBracket) -> Dict[str, Optional[float]]:
    """
    Left and right critical densities.

    rho_c is the midpoint of the bracket divided by ∫w. rho_c' is the
    largest rho on the table whose maximizing mu still lies in the
    bracket, which is where the linear segment of e ends. It falls back
    to rho_c when no table row qualifies.
    """
    if not bracket.found:
        return {"rho_c": None, "rho_c_right": None}
    rho_c = 0.5 * (bracket.mu_lo + bracket.mu_hi) / bracket.integral
    rho = np.asarray(table.rho)
    mu_of_rho = np.asarray(table.mu_of_rho)
    inside = (mu_of_rho >= bracket.mu_lo) & (mu_of_rho <= bracket.mu_hi)
    right = float(rho[inside].max()) if np.any(inside) else rho_c
    return {"rho_c": rho_c, "rho_c_right": max(right, rho_c)}


def branch_crossing(samples: List[ThermoSample], L: Optional[float] = None, bc: Optional[str] = None) -> Optional[float]:
    """
    mu where the solid-seeded branch crosses below the fluid-seeded one
    from strictly above, by linear interpolation; None when it never does.

    Uses the largest box (and the first boundary condition found) unless
    given.
    """
    if not samples:
        return None
    L = L if L is not None else max(s.L for s in samples)
    bc = bc if bc is not None else samples[0].bc.value
    by_branch: Dict[Branch, Dict[float, float]] = {Branch.FLUID: {}, Branch.SOLID: {}}
    for s in samples:
        if s.L == L and s.bc.value == bc:
            by_branch[s.branch][s.mu] = s.f
    common = sorted(set(by_branch[Branch.FLUID]) & set(by_branch[Branch.SOLID]))
    diff = [by_branch[Branch.SOLID][m] - by_branch[Branch.FLUID][m] for m in common]

    for i in range(1, len(common)):
        scale = 1e-10 * max(1.0, abs(by_branch[Branch.FLUID][common[i]]))
        if diff[i - 1] > scale and diff[i] < -scale:
            t = diff[i - 1] / (diff[i - 1] - diff[i])
            crossing = common[i - 1] + t * (common[i] - common[i - 1])
            logger.info(f"THERMO | branches cross at mu~{crossing:.6g} (L={L:g}, {bc})")
            return crossing
    return None


def is_convex(values: Sequence[float], grid: Sequence[float], tolerance: float = 1e-9) -> bool:
    """Discrete second differences >= -tolerance·scale."""
    values = np.asarray(values, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if len(values) < 3:
        return True
    slopes = np.diff(values) / np.diff(grid)
    scale = max(1.0, float(np.max(np.abs(slopes))))
    return bool(np.all(np.diff(slopes) >= -tolerance * scale))


def biconjugate(table: LegendreTable, mu: Sequence[float]) -> np.ndarray:
    """min_rho { e(rho) - mu rho }: recovers f on the mu grid."""
    rho = np.asarray(table.rho)
    e = np.asarray(table.e)
    mu = np.asarray(mu, dtype=float)
    return np.min(e[None, :] - mu[:, None] * rho[None, :], axis=1)

