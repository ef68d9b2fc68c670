"""
Interaction potentials.

A potential is w = eps0·delta_0 + tail, with a radial tail supplied by a
named family and the declared superstability data (epsilon, r) plus the
far-field decay (s, kappa).
"""

import logging
from functools import cached_property
from typing import TYPE_CHECKING, Any, Dict, List, Optional

import numpy as np

from gpsolid.config.constants import TAIL_SAMPLES
from gpsolid.potential.families import BasePotentialFamily, get_family

if TYPE_CHECKING:
    from gpsolid.potential.transforms import Moments

logger = logging.getLogger(__name__)

# epsilon default for families that leave it open, as a fraction of the integral of w
DEFAULT_EPSILON_FRACTION = 0.1


class Potential:
    """
    Radial interaction potential in dimension 1 or 2.

    Immutable after construction; safe to share across worker processes.
    Moments are computed on first use and kept.
    """

    def __init__(
        self,
        family: BasePotentialFamily,
        params: Dict[str, Any],
        dimension: int,
        contact: float,
        epsilon: float,
        r: float,
        s: float,
        kappa: float,
        scale: float = 1.0,
    ):
        self.family = family
        self.params = params
        self.dimension = dimension
        self.contact = float(contact)
        self.epsilon = float(epsilon)
        self.r = float(r)
        self.s = float(s)
        self.kappa = float(kappa)
        self.scale = float(scale)
        self._frozen = True

    def __setattr__(self, name: str, value: Any) -> None:
        if getattr(self, "_frozen", False):
            raise AttributeError(f"Potential is immutable, cannot set {name}")
        super().__setattr__(name, value)

    @cached_property
    def moments(self) -> "Moments":
        from gpsolid.potential.transforms import compute_moments
        return compute_moments(self)

    @property
    def name(self) -> str:
        return self.family.name

    def tail(self, radius) -> np.ndarray:
        """Smooth part of w at distances |x| (sign of the input ignored)."""
        radius = np.abs(np.asarray(radius, dtype=float))
        return self.scale * self.family.tail(radius, self.params)

    @property
    def support(self) -> Optional[float]:
        return self.family.support(self.params)

    @property
    def breakpoints(self) -> List[float]:
        return list(self.family.breakpoints(self.params))

    def is_nonnegative(self) -> bool:
        """Tail >= 0 on the sample grid and eps0 >= 0."""
        if self.contact < 0:
            return False
        return bool(np.all(self.tail(self.sample_radii()) >= 0.0))

    def sample_radii(self) -> np.ndarray:
        """Radii for sampled checks: dense near the core, geometric into the far field."""
        far = max(self.kappa, self.support or 0.0, 1.0)
        near = np.linspace(0.0, far, TAIL_SAMPLES)
        outer = far * np.geomspace(1.0, 1e3, TAIL_SAMPLES)
        return np.concatenate([near, outer, np.asarray(self.breakpoints, dtype=float)])

    def envelope_violations(self) -> List[str]:
        """Check tail(x) <= kappa/|x|^s for |x| >= kappa on sampled radii."""
        radii = self.kappa * np.geomspace(1.0, 1e3, TAIL_SAMPLES)
        tail = self.tail(radii)
        bound = self.kappa / radii ** self.s
        bad = tail > bound * (1.0 + 1e-9) + 1e-300
        if np.any(bad):
            x = float(radii[np.argmax(bad)])
            return [f"tail exceeds kappa/|x|^s at |x|={x:g} (kappa={self.kappa:g}, s={self.s:g})"]
        return []

    def scaled(self, factor: float) -> "Potential":
        """The potential factor·w, with kappa widened so the envelope still holds."""
        if factor <= 0:
            raise ValueError(f"Scale factor must be positive, got {factor}")
        return Potential(
            family=self.family,
            params=self.params,
            dimension=self.dimension,
            contact=factor * self.contact,
            epsilon=factor * self.epsilon,
            r=self.r,
            s=self.s,
            kappa=max(self.kappa, factor * self.kappa),
            scale=factor * self.scale,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Public parameters, for manifests and logs."""
        params = {k: v for k, v in self.params.items() if not k.startswith("_") and v is not None}
        return {
            "family": self.name,
            "dimension": self.dimension,
            "params": params,
            "contact": self.contact,
            "epsilon": self.epsilon,
            "r": self.r,
            "s": self.s,
            "kappa": self.kappa,
            "scale": self.scale,
        }

    def __repr__(self) -> str:
        return (
            f"Potential({self.name}, d={self.dimension}, eps0={self.contact:g}, "
            f"epsilon={self.epsilon:g}, r={self.r:g}, s={self.s:g}, kappa={self.kappa:g})"
        )


def make_potential(
    family: str,
    params: Optional[Dict[str, Any]] = None,
    dimension: int = 1,
    epsilon: Optional[float] = None,
    r: Optional[float] = None,
    s: Optional[float] = None,
    kappa: Optional[float] = None,
    contact: Optional[float] = None,
) -> Potential:
    """
    Build a potential from a family name and parameters.

    Declared constants default to the family's values; any of them can be
    overridden. Raises ValueError for unknown families, invalid parameters,
    non-even tabulated data, a violated far-field envelope or a
    non-positive integral of w.
    """
    if dimension not in (1, 2):
        raise ValueError(f"Only dimensions 1 and 2 are supported, got {dimension}")

    fam = get_family(family)
    prepared = fam.prepare(params or {}, dimension)
    errors = fam.validate(prepared, dimension)
    declared = fam.declared(prepared, dimension)

    values = {
        "epsilon": epsilon if epsilon is not None else declared["epsilon"],
        "r": r if r is not None else declared["r"],
        "s": s if s is not None else declared["s"],
        "kappa": kappa if kappa is not None else declared["kappa"],
        "contact": contact if contact is not None else declared["contact"],
    }
    if values["r"] < 0:
        errors.append(f"r must be >= 0, got {values['r']}")
    if values["s"] <= dimension:
        errors.append(f"s must exceed the dimension {dimension}, got {values['s']}")
    if values["kappa"] <= 0:
        errors.append(f"kappa must be positive, got {values['kappa']}")
    if values["contact"] < 0:
        errors.append(f"contact coefficient must be >= 0, got {values['contact']}")
    if values["epsilon"] is not None and values["epsilon"] <= 0:
        errors.append(f"epsilon must be positive, got {values['epsilon']}")
    if errors:
        raise ValueError("; ".join(errors))

    fields = {
        "family": fam,
        "params": prepared,
        "dimension": dimension,
        "contact": values["contact"],
        "r": values["r"],
        "s": values["s"],
        "kappa": values["kappa"],
    }
    # the tail and its moments do not depend on epsilon
    epsilon = values["epsilon"] if values["epsilon"] is not None else 1.0
    potential = Potential(epsilon=epsilon, **fields)

    errors = potential.envelope_violations()
    if errors:
        raise ValueError("; ".join(errors))

    integral = potential.moments.integral
    if not integral > 0:
        raise ValueError(f"Integral of w must be positive, got {integral:g} for {family}")
    if values["epsilon"] is None:
        potential = Potential(epsilon=DEFAULT_EPSILON_FRACTION * integral, **fields)

    logger.debug(f"POTENTIAL | built {potential!r}, integral={integral:.10g}")
    return potential
