"""
Subcommand implementations.

Each command reads its blocks from the RunConfig, calls into the
numerical packages and writes its tables through a RunContext, which
also records the files written and the convergence flag of every cell.
"""

import logging
import math
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from gpsolid.classical import (
    ClassicalMeasure,
    e_cl_estimate,
    euler_lagrange_check,
    high_density_consistency,
    minimize_classical,
)
from gpsolid.cli.fig1 import run_fig1
from gpsolid.cli.output import RunManifest, config_hash, emit_csv
from gpsolid.config.constants import MIN_BOX_SIZES
from gpsolid.config.run_config import Command, Ensemble, RunConfig
from gpsolid.criticality import ScanOptions, criticality_report
from gpsolid.diagnostics import (
    fluid_variance,
    kinetic_density,
    momentum_density,
    oscillation,
    peak_period,
    winding_degree,
)
from gpsolid.errors import DegreeUndefinedError, ScanIncompleteError
from gpsolid.lattice import Field, box_grid, export_text, read_snapshot, write_snapshot
from gpsolid.potential import fourier_profile, moments, stability_check
from gpsolid.solver import (
    MinimizationResult,
    MinimizeOptions,
    minimize_canonical,
    minimize_grand_canonical,
    solve_vortex_disk,
)
from gpsolid.thermo import (
    SweepOptions,
    ThermoSample,
    branch_crossing,
    canonical_energy_curve,
    critical_density,
    curve_violations,
    ensemble_round_trip,
    extrapolate,
    phi_and_mu_c,
    refine_bracket,
    sweep,
)

logger = logging.getLogger(__name__)

SOLVE_SCHEMA = (
    "ensemble", "mu", "lam", "energy", "free_energy", "mass", "multiplier",
    "residual", "iterations", "converged", "seed",
)
THERMO_SCHEMA = ("mu", "L", "bc", "branch", "f_L", "rho_L", "e_L", "converged", "residual", "iterations", "seed")
CURVE_SCHEMA = ("mu", "f", "rho", "e", "uncertainty", "low_confidence", "rho_from_f")
LEGENDRE_SCHEMA = ("rho", "e", "mu_of_rho", "phi")
TRANSITION_SCHEMA = (
    "mu_lo", "mu_hi", "found", "rho_c", "rho_c_right", "branch_crossing", "mu_star", "best_lower_bound",
)
CLASSICAL_SCHEMA = (
    "L", "F_cl_unit", "f_cl_unit", "e_cl_box", "residual", "iterations", "converged", "start",
    "el_global_min", "el_support_max", "el_passed",
)
VORTEX_SCHEMA = (
    "mu", "radius", "spacing", "energy", "free_energy", "mass", "degree",
    "momentum_x", "momentum_y", "residual", "iterations", "converged",
)
DIAGNOSE_SCHEMA = (
    "kind", "radius", "worst_range", "worst_range_squared", "worst_variance", "fluid_variance",
    "density", "rhs", "flag", "peaks", "period", "kinetic_density", "momentum_x", "momentum_y", "degree",
)


class RunContext:
    """Output directory, worker count and the bookkeeping for the manifest."""

    def __init__(self, config: RunConfig, out_dir: Path, jobs: int = 1):
        self.config = config
        self.out_dir = Path(out_dir)
        self.jobs = jobs
        self.files: List[Path] = []
        self.convergence: Dict[str, bool] = {}

    def minimize_options(self, jobs: Optional[int] = None) -> MinimizeOptions:
        opts = self.config.minimize_options()
        return opts.model_copy(update={"jobs": jobs}) if jobs is not None else opts

    def add(self, paths: Iterable[Path]):
        for path in paths:
            if path not in self.files:
                self.files.append(path)

    def csv(self, name: str, records: Iterable[Mapping[str, object]], schema: Sequence[str]) -> Path:
        path = emit_csv(records, self.out_dir / name, schema)
        self.add([path])
        return path

    def snapshot(self, name: str, field: Field, kind: str = "field") -> Path:
        path = write_snapshot(field, self.out_dir / name, kind)
        self.add([path])
        return path

    def text(self, name: str, field: Field) -> Path:
        path = export_text(field, self.out_dir / name)
        self.add([path])
        return path

    def flag(self, cell: str, converged: bool):
        self.convergence[cell] = bool(converged)
        if not converged:
            logger.warning(f"RUN | cell {cell} did not converge")

    def manifest(self, wall_time: float) -> RunManifest:
        return RunManifest(
            config_hash=config_hash(self.config),
            command=self.config.command.value,
            wall_time=wall_time,
            convergence=dict(self.convergence),
            files=[str(p.relative_to(self.out_dir)) if p.is_relative_to(self.out_dir) else str(p) for p in self.files],
        )


def _sample_cell(sample: ThermoSample) -> str:
    return f"mu{sample.mu:g}_L{sample.L:g}_{sample.bc.value}_{sample.branch.value}"


def _result_row(result: MinimizationResult) -> Dict[str, object]:
    return {
        "energy": result.energy,
        "free_energy": result.free_energy,
        "mass": result.mass,
        "multiplier": result.multiplier,
        "residual": result.residual,
        "iterations": result.iterations,
        "converged": result.converged,
        "seed": result.seed,
    }


def run_criticality(config: RunConfig, ctx: RunContext):
    p = config.build_potential()
    scan = config.criticality or ScanOptions()
    kgrid = scan.kgrid(p)
    report = criticality_report(p, kgrid)
    stability = stability_check(p, kgrid)

    rows = report.rows()
    rows.append({"name": "integral", "value": moments(p).integral, "k0": None, "applicable": True})
    rows.append({"name": "stability", "value": stability.value, "k0": None, "applicable": True})
    ctx.csv("criticality.csv", rows, ("name", "value", "k0", "applicable"))

    profile = fourier_profile(p, float(kgrid[-1]), scan.points)
    ctx.csv(
        "fourier.csv",
        [{"k": float(k), "w_hat": float(v)} for k, v in zip(profile.k, profile.values)],
        ("k", "w_hat"),
    )
    if not report.ordering_ok:
        logger.error("CRIT | a lower bound exceeds mu_star; see criticality.csv")


def run_solve(config: RunConfig, ctx: RunContext):
    p = config.build_potential()
    grid = config.grid.build(p.dimension)
    block = config.solve
    opts = ctx.minimize_options(jobs=ctx.jobs)

    if block.ensemble is Ensemble.GRAND_CANONICAL:
        result = minimize_grand_canonical(p, block.mu, grid, opts)
    else:
        result = minimize_canonical(p, block.lam, grid, opts)

    ctx.snapshot("solution.gpsf", result.field)
    if block.text:
        ctx.text("solution.txt", result.field)
    row = {"ensemble": block.ensemble.value, "mu": block.mu, "lam": block.lam}
    row.update(_result_row(result))
    ctx.csv("solve.csv", [row], SOLVE_SCHEMA)
    ctx.csv(
        "history.csv",
        [{"iteration": i, "value": v} for i, v in enumerate(result.history)],
        ("iteration", "value"),
    )
    ctx.csv(
        "seeds.csv",
        [{"seed": s, "value": v} for s, v in result.seed_free_energies.items()],
        ("seed", "value"),
    )
    ctx.flag("solve", result.converged)


def _criticality_summary(p) -> Dict[str, Optional[float]]:
    try:
        report = criticality_report(p)
    except ScanIncompleteError as e:
        logger.warning(f"SWEEP | criticality bounds unavailable: {e}")
        return {"mu_star": None, "best_lower_bound": None}
    mu_star = report.mu_star if math.isfinite(report.mu_star) else None
    return {"mu_star": mu_star, "best_lower_bound": report.best_lower_bound()}


def run_sweep(config: RunConfig, ctx: RunContext):
    p = config.build_potential()
    block = config.sweep
    bc_list = [bc.value for bc in block.bc]
    # cells are the unit of parallelism; seeds within a cell run serially
    minimize = ctx.minimize_options(jobs=1)
    opts = SweepOptions(spacing=block.spacing, jobs=ctx.jobs, branches=block.branches, minimize=minimize)

    samples = sweep(p, block.mu, block.L, bc_list, opts)
    for s in samples:
        ctx.flag(_sample_cell(s), s.converged)
    ctx.csv(
        "thermo.csv",
        [dict(s.row(), converged=s.converged, residual=s.residual, iterations=s.iterations, seed=s.seed) for s in samples],
        THERMO_SCHEMA,
    )
    crossing = branch_crossing(samples)

    L_max = max(block.L)
    if block.round_trip:
        trips = [ensemble_round_trip(p, mu, L_max, bc_list[0], block.spacing, minimize) for mu in block.round_trip]
        for trip in trips:
            ctx.flag(f"round_trip_mu{trip.mu:g}", trip.converged)
        ctx.csv("round_trip.csv", [t.model_dump() for t in trips], ("mu", "lam", "multiplier", "relative_gap", "converged"))
    if block.canonical_rho:
        points = canonical_energy_curve(p, block.canonical_rho, L_max, bc_list[0], block.spacing, minimize)
        for pt in points:
            ctx.flag(f"canonical_rho{pt.rho:g}", pt.converged)
        ctx.csv("canonical.csv", [pt.model_dump() for pt in points], ("rho", "e", "multiplier", "converged"))

    if len(set(block.L)) < MIN_BOX_SIZES:
        logger.warning(f"SWEEP | {len(set(block.L))} box size(s); no thermodynamic limit without {MIN_BOX_SIZES}")
        return

    integral = moments(p).integral
    curve = extrapolate(samples)
    for problem in curve_violations(curve, integral):
        logger.warning(f"SWEEP | {problem}")
    table, bracket = phi_and_mu_c(curve, integral)
    if block.refine:
        bracket = refine_bracket(p, bracket, block.L, bc_list, opts)
    densities = critical_density(table, bracket)

    ctx.csv("curve.csv", [{k: getattr(pt, k) for k in CURVE_SCHEMA} for pt in curve.points], CURVE_SCHEMA)
    ctx.csv("legendre.csv", table.rows(), LEGENDRE_SCHEMA)
    transition = {
        "mu_lo": bracket.mu_lo,
        "mu_hi": bracket.mu_hi,
        "found": bracket.found,
        "rho_c": densities["rho_c"],
        "rho_c_right": densities["rho_c_right"],
        "branch_crossing": crossing,
    }
    transition.update(_criticality_summary(p))
    ctx.csv("transition.csv", [transition], TRANSITION_SCHEMA)
    logger.info(f"SWEEP | mu_c {bracket.describe()}, rho_c={densities['rho_c']}")


def run_fig1_command(config: RunConfig, ctx: RunContext):
    rows, paths = run_fig1(ctx.out_dir, ctx.minimize_options(jobs=1), jobs=ctx.jobs)
    ctx.add(paths)
    for row in rows:
        ctx.flag(f"fig1_mu{row.mu:g}", row.converged)


def run_classical(config: RunConfig, ctx: RunContext):
    p = config.build_potential()
    block = config.classical
    opts = block.options(config.minimize.k0)
    sizes = sorted(set(block.L))

    e_cl = None
    if len(sizes) >= MIN_BOX_SIZES:
        estimate = e_cl_estimate(p, sizes, block.spacing, block.bc.value, opts)
        e_cl = estimate.e_cl
        ctx.csv(
            "e_cl.csv",
            [estimate.model_dump(include={"e_cl", "uncertainty", "f_limit", "upper_bound", "within_bound"})],
            ("e_cl", "uncertainty", "f_limit", "upper_bound", "within_bound"),
        )
    else:
        logger.info(f"CLASSICAL | {len(sizes)} box size(s); e_cl from the largest box only")

    grid = box_grid([sizes[-1]] * p.dimension, block.spacing, block.bc.value)
    result = minimize_classical(p, 1.0, grid, opts)
    check = euler_lagrange_check(result.measure, p, 1.0)
    ctx.flag("classical", result.converged)
    ctx.snapshot("measure.gpsf", result.measure.as_field(), kind="measure")
    ctx.csv(
        "classical.csv",
        [{
            "L": sizes[-1],
            "F_cl_unit": result.free_energy,
            "f_cl_unit": result.free_energy / grid.volume,
            "e_cl_box": -grid.volume / (4.0 * result.free_energy) if result.free_energy < 0 else None,
            "residual": result.residual,
            "iterations": result.iterations,
            "converged": result.converged,
            "start": result.start,
            "el_global_min": check.global_min,
            "el_support_max": check.support_max,
            "el_passed": check.passed,
        }],
        CLASSICAL_SCHEMA,
    )

    if block.mu:
        rows = high_density_consistency(p, block.mu, grid, e_cl, ctx.minimize_options(jobs=ctx.jobs), opts)
        for row in rows:
            ctx.flag(f"high_density_mu{row.mu:g}", row.converged)
        ctx.csv(
            "high_density.csv",
            [row.model_dump() for row in rows],
            ("mu", "f_over_mu2", "target", "relative_deviation", "density_distance", "converged"),
        )


def _degree(f: Field, radius: float) -> Optional[int]:
    try:
        return winding_degree(f, radius)
    except DegreeUndefinedError as e:
        logger.warning(f"DIAG | {e}")
        return None


def run_vortex(config: RunConfig, ctx: RunContext):
    p = config.build_potential()
    block = config.vortex
    result = solve_vortex_disk(p, block.mu, block.radius, ctx.minimize_options(jobs=1), block.spacing)
    circle = block.circle or 0.5 * block.radius
    degree = _degree(result.field, circle)
    half = 0.5 * block.radius
    momentum = momentum_density(result.field, [(-half, half), (-half, half)])

    ctx.snapshot("vortex.gpsf", result.field)
    ctx.csv(
        "vortex.csv",
        [{
            "mu": block.mu,
            "radius": block.radius,
            "spacing": result.field.grid.spacing,
            "energy": result.energy,
            "free_energy": result.free_energy,
            "mass": result.mass,
            "degree": degree,
            "momentum_x": float(momentum[0]),
            "momentum_y": float(momentum[1]),
            "residual": result.residual,
            "iterations": result.iterations,
            "converged": result.converged,
        }],
        VORTEX_SCHEMA,
    )
    ctx.flag("vortex", result.converged)
    logger.info(f"VORTEX | degree {degree} on r={circle:g}, momentum {momentum.tolist()}")


def _window(values: Sequence[float]):
    if not values:
        return None
    return [(values[i], values[i + 1]) for i in range(0, len(values), 2)]


def run_diagnose(config: RunConfig, ctx: RunContext):
    block = config.diagnose
    field, kind = read_snapshot(block.snapshot)
    if kind == "measure":
        field = Field(field.grid, np.sqrt(ClassicalMeasure.from_field(field).density), "real")
    p = config.build_potential() if config.potential is not None else None

    report = oscillation(field, block.radius, p, block.mu)
    window = _window(block.window)
    momentum = momentum_density(field, window)
    peaks = peak_period(field) if field.grid.dimension == 1 else None
    degree = None
    if block.circle is not None and field.grid.dimension == 2 and field.is_complex:
        degree = _degree(field, block.circle)

    axes = ("x", "y")[: field.grid.dimension]
    ctx.csv("oscillation.csv", report.rows(), axes + ("max", "min", "variance"))
    ctx.csv(
        "diagnose.csv",
        [{
            "kind": kind,
            "radius": block.radius,
            "worst_range": report.worst_range,
            "worst_range_squared": report.worst_range_squared,
            "worst_variance": report.worst_variance,
            "fluid_variance": fluid_variance(field, report.density, block.radius),
            "density": report.density,
            "rhs": report.rhs,
            "flag": report.flag,
            "peaks": peaks.count if peaks else None,
            "period": peaks.period if peaks else None,
            "kinetic_density": kinetic_density(field, window),
            "momentum_x": float(momentum[0]),
            "momentum_y": float(momentum[1]) if len(momentum) > 1 else None,
            "degree": degree,
        }],
        DIAGNOSE_SCHEMA,
    )


# Registry of subcommands
COMMANDS: Dict[Command, Callable[[RunConfig, RunContext], None]] = {
    Command.CRITICALITY: run_criticality,
    Command.SOLVE: run_solve,
    Command.SWEEP: run_sweep,
    Command.FIG1: run_fig1_command,
    Command.CLASSICAL: run_classical,
    Command.VORTEX: run_vortex,
    Command.DIAGNOSE: run_diagnose,
}


def get_command(command: Command) -> Callable[[RunConfig, RunContext], None]:
    return COMMANDS[Command(command)]
