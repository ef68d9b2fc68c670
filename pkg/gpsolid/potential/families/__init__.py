"""
Potential Families

Named interaction families usable from run configurations.
Custom families can be added with register_family().
"""

from typing import Dict, List

from gpsolid.potential.families.base import BasePotentialFamily, ball_volume
from gpsolid.potential.families.contact import ContactFamily
from gpsolid.potential.families.gaussian import GaussianFamily
from gpsolid.potential.families.lennard_jones import TruncatedLennardJonesFamily
from gpsolid.potential.families.step import StepFamily
from gpsolid.potential.families.tabulated import TabulatedFamily, load_tabulated
from gpsolid.potential.families.vdw import VanDerWaalsFamily

# Registry of built-in families
_FAMILIES: Dict[str, BasePotentialFamily] = {
    "step": StepFamily(),
    "vdw": VanDerWaalsFamily(),
    "gaussian": GaussianFamily(),
    "truncated-lennard-jones": TruncatedLennardJonesFamily(),
    "pure-contact": ContactFamily(),
    "tabulated": TabulatedFamily(),
}


def get_family(name: str) -> BasePotentialFamily:
    """Get a family by name. Raises ValueError if not found."""
    family = _FAMILIES.get(name)
    if family is None:
        raise ValueError(f"Unknown potential family '{name}'. Known: {list_families()}")
    return family


def register_family(name: str, family: BasePotentialFamily):
    """Register a custom family."""
    _FAMILIES[name] = family


def list_families() -> List[str]:
    return sorted(_FAMILIES)


__all__ = [
    "BasePotentialFamily",
    "ball_volume",
    "get_family",
    "register_family",
    "list_families",
    "load_tabulated",
]
