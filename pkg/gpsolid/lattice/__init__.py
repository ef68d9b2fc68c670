"""
Grids, fields and the discrete GP functional.
"""

from gpsolid.lattice.energy import (
    check_energy_floor,
    energy,
    evaluate,
    free_energy,
    gp_gradient,
    gp_operator,
    gp_residual,
    mean_field,
    superstability_floor,
)
from gpsolid.lattice.grid import Boundary, Field, Grid, ScalarType, box_grid
from gpsolid.lattice.operators import (
    InteractionKernel,
    get_kernel,
    interaction_field,
    kinetic_energy_array,
    laplacian_apply,
    laplacian_array,
)
from gpsolid.lattice.snapshot import (
    decode_snapshot,
    encode_snapshot,
    export_text,
    read_snapshot,
    write_snapshot,
)

__all__ = [
    # Geometry
    "Boundary",
    "Field",
    "Grid",
    "ScalarType",
    "box_grid",
    # Operators
    "InteractionKernel",
    "get_kernel",
    "interaction_field",
    "kinetic_energy_array",
    "laplacian_apply",
    "laplacian_array",
    # Functionals
    "check_energy_floor",
    "energy",
    "evaluate",
    "free_energy",
    "gp_gradient",
    "gp_operator",
    "gp_residual",
    "mean_field",
    "superstability_floor",
    # Snapshots
    "decode_snapshot",
    "encode_snapshot",
    "export_text",
    "read_snapshot",
    "write_snapshot",
]
