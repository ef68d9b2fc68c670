"""
Run configuration

Line-oriented text, one ``section.key = value`` per line, ``#`` starting a
comment. Lists are comma separated. Family parameters are written
``potential.params.<name>``; a bare ``potential.<name>`` that is not one of
the declared constants is accepted as the same parameter.

    run.command = sweep
    potential.family = vdw
    sweep.mu = 70, 75, 80
    sweep.L = 20, 40, 80
    sweep.spacing = 0.05
"""

import logging
import typing
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from gpsolid.classical import ClassicalOptions
from gpsolid.criticality import ScanOptions
from gpsolid.errors import ConfigError
from gpsolid.lattice import Boundary, Grid, box_grid
from gpsolid.potential import Potential, get_family, make_potential
from gpsolid.solver import MinimizeOptions
from gpsolid.thermo import Branch

logger = logging.getLogger(__name__)


class Command(str, Enum):
    CRITICALITY = "criticality"
    SOLVE = "solve"
    SWEEP = "sweep"
    FIG1 = "fig1"
    CLASSICAL = "classical"
    VORTEX = "vortex"
    DIAGNOSE = "diagnose"


class Ensemble(str, Enum):
    GRAND_CANONICAL = "grand-canonical"
    CANONICAL = "canonical"


class RunBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Command
    output: Optional[str] = Field(None, description="Output directory; GPSOLID_OUT overrides it")
    seed: int = Field(0, description="Random seed for the random start fields")
    jobs: Optional[int] = Field(None, ge=1)


class PotentialBlock(BaseModel):
    """Family, dimension and the declared constants; family parameters go to ``params``."""

    model_config = ConfigDict(extra="forbid")

    family: str
    dimension: int = Field(1, ge=1, le=2)
    epsilon: Optional[float] = None
    r: Optional[float] = None
    s: Optional[float] = None
    kappa: Optional[float] = None
    contact: Optional[float] = None
    params: Dict[str, Union[float, str]] = Field(default_factory=dict)

    def build(self) -> Potential:
        return make_potential(
            self.family,
            dict(self.params),
            dimension=self.dimension,
            epsilon=self.epsilon,
            r=self.r,
            s=self.s,
            kappa=self.kappa,
            contact=self.contact,
        )


class GridBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    extent: List[float] = Field(..., min_length=1, max_length=2, description="L, or one L per axis")
    spacing: float = Field(..., gt=0)
    bc: Boundary = Boundary.DIRICHLET

    def build(self, dimension: int) -> Grid:
        extents = self.extent * dimension if len(self.extent) == 1 else self.extent
        return box_grid(extents, self.spacing, self.bc.value)


class SolveBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ensemble: Ensemble = Ensemble.GRAND_CANONICAL
    mu: Optional[float] = None
    lam: Optional[float] = Field(None, gt=0, description="Mass of the canonical problem")
    text: bool = Field(False, description="Also export the density as plot columns")


class SweepBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mu: List[float] = Field(..., min_length=1)
    L: List[float] = Field(..., min_length=1)
    bc: List[Boundary] = Field(default_factory=lambda: [Boundary.DIRICHLET, Boundary.NEUMANN])
    spacing: float = Field(..., gt=0)
    branches: List[Branch] = Field(default_factory=lambda: [Branch.FLUID, Branch.SOLID])
    refine: bool = Field(False, description="Bisect the critical bracket after the sweep")
    round_trip: List[float] = Field(default_factory=list, description="mu values for the canonical round trip, largest L")
    canonical_rho: List[float] = Field(default_factory=list, description="Densities of a direct canonical e_L(rho) curve, largest L")


class ClassicalBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    L: List[float] = Field(..., min_length=1)
    spacing: float = Field(..., gt=0)
    bc: Boundary = Boundary.DIRICHLET
    mu: List[float] = Field(default_factory=list, description="High-density comparison points")
    tol: float = Field(1e-8, gt=0)
    max_iters: int = Field(50000, gt=0)

    def options(self, k0: Optional[float] = None) -> ClassicalOptions:
        return ClassicalOptions(max_iters=self.max_iters, tol=self.tol, k0=k0)


class VortexBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mu: float = Field(..., gt=0)
    radius: float = Field(..., gt=0)
    spacing: Optional[float] = Field(None, gt=0)
    circle: Optional[float] = Field(None, gt=0, description="Radius of the degree circle; radius/2 if unset")


class DiagnoseBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    snapshot: str
    radius: float = Field(..., gt=0, description="Oscillation window radius R")
    mu: Optional[float] = None
    window: List[float] = Field(default_factory=list, description="lo, hi per axis; default interior")
    circle: Optional[float] = Field(None, gt=0, description="Degree circle around the origin, complex fields")


class RunConfig(BaseModel):
    """A complete run: the command, its blocks and the shared minimizer settings."""

    model_config = ConfigDict(extra="forbid")

    run: RunBlock
    potential: Optional[PotentialBlock] = None
    grid: Optional[GridBlock] = None
    solve: Optional[SolveBlock] = None
    sweep: Optional[SweepBlock] = None
    criticality: Optional[ScanOptions] = None
    classical: Optional[ClassicalBlock] = None
    vortex: Optional[VortexBlock] = None
    diagnose: Optional[DiagnoseBlock] = None
    minimize: MinimizeOptions = Field(default_factory=MinimizeOptions)

    @property
    def command(self) -> Command:
        return self.run.command

    def build_potential(self) -> Potential:
        if self.potential is None:
            raise ConfigError(f"command '{self.command.value}' needs a potential section")
        try:
            return self.potential.build()
        except ValueError as e:
            raise ConfigError(f"potential: {e}") from e

    def minimize_options(self) -> MinimizeOptions:
        """The minimize block with run.seed as the random seed."""
        return self.minimize.model_copy(update={"random_seed": self.run.seed})


_SECTIONS: Dict[str, Type[BaseModel]] = {
    "run": RunBlock,
    "potential": PotentialBlock,
    "grid": GridBlock,
    "solve": SolveBlock,
    "sweep": SweepBlock,
    "criticality": ScanOptions,
    "classical": ClassicalBlock,
    "vortex": VortexBlock,
    "diagnose": DiagnoseBlock,
    "minimize": MinimizeOptions,
}

# Sections each command cannot run without
REQUIRED_SECTIONS: Dict[Command, Tuple[str, ...]] = {
    Command.CRITICALITY: ("potential",),
    Command.SOLVE: ("potential", "grid", "solve"),
    Command.SWEEP: ("potential", "sweep"),
    Command.FIG1: (),
    Command.CLASSICAL: ("potential", "classical"),
    Command.VORTEX: ("potential", "vortex"),
    Command.DIAGNOSE: ("diagnose",),
}

_POTENTIAL_KEYS = set(PotentialBlock.model_fields) - {"params"}
PARAMS_PREFIX = "params."


def _is_list_field(model: Type[BaseModel], key: str) -> bool:
    field = model.model_fields.get(key)
    if field is None:
        return False
    annotation = field.annotation
    if typing.get_origin(annotation) is Union:
        return any(typing.get_origin(arg) is list for arg in typing.get_args(annotation))
    return typing.get_origin(annotation) is list


def _scalar(value: str) -> Union[float, str]:
    try:
        return float(value)
    except ValueError:
        return value


def _split_lines(text: str) -> Tuple[Dict[str, Dict[str, str]], Dict[str, int], List[Tuple[Optional[int], str]]]:
    """Returns (values by section, line of every key, errors)."""
    sections: Dict[str, Dict[str, str]] = {}
    lines: Dict[str, int] = {}
    errors: List[Tuple[Optional[int], str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append((number, f"expected 'section.key = value', got '{line}'"))
            continue
        name, value = (part.strip() for part in line.split("=", 1))
        section, _, key = name.partition(".")
        param = key[len(PARAMS_PREFIX):] if section == "potential" and key.startswith(PARAMS_PREFIX) else None
        if not section or not key or "." in (key if param is None else param) or param == "":
            errors.append((number, f"key '{name}' is not of the form section.key or potential.params.name"))
            continue
        if section not in _SECTIONS:
            errors.append((number, f"unknown section '{section}'"))
            continue
        # potential.params.c and potential.c name the same parameter
        seen = name if param is None else f"potential.{param}"
        if seen in lines:
            errors.append((number, f"duplicate key '{seen}' on lines {lines[seen]} and {number}"))
            continue
        lines[seen] = number
        sections.setdefault(section, {})[key] = value

    return sections, lines, errors


def _to_raw(sections: Dict[str, Dict[str, str]]) -> Dict[str, Any]:
    raw: Dict[str, Any] = {}
    for section, values in sections.items():
        model = _SECTIONS[section]
        block: Dict[str, Any] = {}
        for key, value in values.items():
            if section == "potential" and key.startswith(PARAMS_PREFIX):
                block.setdefault("params", {})[key[len(PARAMS_PREFIX):]] = _scalar(value)
            elif section == "potential" and key not in _POTENTIAL_KEYS:
                block.setdefault("params", {})[key] = _scalar(value)
            elif _is_list_field(model, key):
                block[key] = [item.strip() for item in value.split(",") if item.strip()]
            else:
                block[key] = value
        raw[section] = block
    return raw


def _section_line(lines: Dict[str, int], section: str) -> Optional[int]:
    numbers = [n for name, n in lines.items() if name.split(".", 1)[0] == section]
    return min(numbers) if numbers else None


def _validation_errors(error: ValidationError, lines: Dict[str, int]) -> List[Tuple[Optional[int], str]]:
    errors = []
    for item in error.errors():
        loc = [str(part) for part in item["loc"]]
        if len(loc) >= 3 and loc[0] == "potential" and loc[1] == "params":
            loc = [loc[0], loc[2]]
        name = ".".join(loc[:2])
        section = loc[0] if loc else ""
        line = lines.get(name, _section_line(lines, section))
        if item["type"] == "extra_forbidden":
            message = f"unknown key '{name}'"
        elif item["type"] == "missing":
            message = f"missing required key '{name}'" if len(loc) > 1 else f"missing section '{name}'"
        else:
            message = f"{'.'.join(loc)}: {item['msg']}"
        errors.append((line, message))
    return errors


def _validate_run_config(config: RunConfig) -> List[str]:
    """Cross-section checks. Returns a list of errors."""
    errors = []
    for section in REQUIRED_SECTIONS[config.command]:
        if getattr(config, section) is None:
            errors.append(f"command '{config.command.value}' needs a '{section}' section")

    if config.potential is not None:
        try:
            family = get_family(config.potential.family)
            merged = dict(family.default_params)
            merged.update(config.potential.params)
            errors.extend(family.validate(merged, config.potential.dimension))
        except (TypeError, ValueError) as e:
            errors.append(f"potential: {e}")

    if config.solve is not None:
        if config.solve.ensemble is Ensemble.GRAND_CANONICAL and config.solve.mu is None:
            errors.append("solve.mu is required for the grand-canonical ensemble")
        if config.solve.ensemble is Ensemble.CANONICAL and config.solve.lam is None:
            errors.append("solve.lam is required for the canonical ensemble")

    if config.grid is not None and config.potential is not None:
        if len(config.grid.extent) not in (1, config.potential.dimension):
            errors.append(f"grid.extent needs 1 or {config.potential.dimension} values")

    if config.vortex is not None and config.potential is not None and config.potential.dimension != 2:
        errors.append("vortex runs need potential.dimension = 2")

    if config.diagnose is not None and len(config.diagnose.window) % 2:
        errors.append("diagnose.window needs a lo, hi pair per axis")

    return errors


def parse_config(text: str) -> RunConfig:
    """
    Parse run configuration text.

    Raises:
        ConfigError: on the first problem in line order; ``errors`` lists all of them
    """
    sections, lines, errors = _split_lines(text)

    config = None
    if not errors:
        try:
            config = RunConfig.model_validate(_to_raw(sections))
        except ValidationError as e:
            errors = _validation_errors(e, lines)

    if errors:
        errors.sort(key=lambda item: (item[0] is None, item[0] or 0))
        formatted = [f"line {n}: {m}" if n is not None else m for n, m in errors]
        raise ConfigError(errors[0][1], line=errors[0][0], errors=formatted)

    problems = _validate_run_config(config)
    if problems:
        raise ConfigError(problems[0], line=lines.get("run.command"), errors=problems)

    logger.debug(f"CONFIG | parsed '{config.command.value}' run with sections {sorted(sections)}")
    return config


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    return parse_config(text)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_format_value(v) for v in value)
    return str(value)


def serialize_config(config: RunConfig) -> str:
    """Canonical text of a config; parse_config(serialize_config(c)) == c."""
    out = []
    for section in _SECTIONS:
        block = getattr(config, section)
        if block is None:
            continue
        for key in type(block).model_fields:
            value = getattr(block, key)
            if value is None:
                continue
            if section == "potential" and key == "params":
                out.extend(f"potential.params.{name} = {_format_value(v)}" for name, v in value.items())
                continue
            out.append(f"{section}.{key} = {_format_value(value)}")
    return "\n".join(out) + "\n"
