"""Tests for run configuration parsing and serialization."""

import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest

from gpsolid.config.run_config import (
    Command,
    Ensemble,
    load_config,
    parse_config,
    serialize_config,
)
from gpsolid.errors import ConfigError
from gpsolid.lattice import Boundary
from gpsolid.solver import SeedStrategy


SWEEP_TEXT = """
# vdw thermodynamics
run.command = sweep
run.seed = 7
potential.family = vdw
potential.c = 2
sweep.mu = 70, 75, 80
sweep.L = 20, 40, 80
sweep.spacing = 0.05
minimize.seeds = constant, cosine, random
minimize.max_iters = 5000
"""


class TestParse:
    def test_minimal_solve(self, minimal_solve_config):
        config = parse_config(minimal_solve_config)
        assert config.command is Command.SOLVE
        assert config.grid.extent == [4.0]
        assert config.grid.bc is Boundary.DIRICHLET
        assert config.solve.ensemble is Ensemble.GRAND_CANONICAL
        assert config.solve.mu == 1.0
        assert config.minimize.max_iters == 20000

    def test_sweep_lists_and_params(self):
        config = parse_config(SWEEP_TEXT)
        assert config.sweep.mu == [70.0, 75.0, 80.0]
        assert config.sweep.bc == [Boundary.DIRICHLET, Boundary.NEUMANN]
        assert config.potential.params == {"c": 2.0}
        assert config.minimize.seeds == [SeedStrategy.CONSTANT, SeedStrategy.COSINE, SeedStrategy.RANDOM]
        assert config.minimize_options().random_seed == 7

    def test_build_potential(self):
        p = parse_config(SWEEP_TEXT).build_potential()
        assert p.name == "vdw"
        assert p.params["c"] == 2.0

    def test_inline_comment(self, minimal_solve_config):
        config = parse_config(minimal_solve_config.replace("solve.mu = 1", "solve.mu = 3  # chemical potential"))
        assert config.solve.mu == 3.0

    def test_empty_list(self):
        config = parse_config(SWEEP_TEXT + "sweep.round_trip =\n")
        assert config.sweep.round_trip == []

    def test_params_prefix(self):
        config = parse_config("run.command = criticality\npotential.family = vdw\npotential.params.c = 2\n")
        assert config.potential.params == {"c": 2.0}
        assert config.build_potential().params["c"] == 2.0

    def test_params_prefix_and_bare_key_clash(self):
        text = "run.command = criticality\npotential.family = vdw\npotential.params.c = 2\npotential.c = 3\n"
        with pytest.raises(ConfigError) as exc:
            parse_config(text)
        assert exc.value.line == 4
        assert "lines 3 and 4" in str(exc.value)

    def test_params_prefix_needs_a_name(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("run.command = criticality\npotential.family = vdw\npotential.params. = 2\n")
        assert exc.value.line == 3


class TestErrors:
    def test_duplicate_key(self, minimal_solve_config):
        with pytest.raises(ConfigError) as exc:
            parse_config(minimal_solve_config + "grid.spacing = 0.5\n")
        assert exc.value.line == 6
        assert "duplicate key 'grid.spacing'" in str(exc.value)
        assert "lines 4 and 6" in str(exc.value)

    def test_unknown_key(self, minimal_solve_config):
        with pytest.raises(ConfigError) as exc:
            parse_config(minimal_solve_config + "grid.shape = 4\n")
        assert exc.value.line == 6
        assert "unknown key 'grid.shape'" in str(exc.value)

    def test_unknown_section(self, minimal_solve_config):
        with pytest.raises(ConfigError) as exc:
            parse_config("mesh.size = 3\n" + minimal_solve_config)
        assert exc.value.line == 1

    def test_line_without_value(self, minimal_solve_config):
        with pytest.raises(ConfigError) as exc:
            parse_config(minimal_solve_config + "grid.bc\n")
        assert exc.value.line == 6

    def test_bad_value(self, minimal_solve_config):
        with pytest.raises(ConfigError) as exc:
            parse_config(minimal_solve_config.replace("grid.spacing = 0.25", "grid.spacing = -1"))
        assert exc.value.line == 4

    def test_all_errors_collected(self, minimal_solve_config):
        text = minimal_solve_config + "grid.shape = 4\nsolve.window = 2\n"
        with pytest.raises(ConfigError) as exc:
            parse_config(text)
        assert len(exc.value.errors) == 2
        assert exc.value.errors[0].startswith("line 6")

    def test_missing_section(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("run.command = solve\npotential.family = gaussian\nsolve.mu = 1\n")
        assert "'grid'" in str(exc.value)

    def test_canonical_needs_lambda(self, minimal_solve_config):
        with pytest.raises(ConfigError):
            parse_config(minimal_solve_config + "solve.ensemble = canonical\n")

    def test_invalid_family_parameter(self, minimal_solve_config):
        with pytest.raises(ConfigError) as exc:
            parse_config(minimal_solve_config + "potential.sigma = -1\n")
        assert "sigma" in str(exc.value)

    def test_vortex_needs_two_dimensions(self):
        text = "run.command = vortex\npotential.family = gaussian\nvortex.mu = 1\nvortex.radius = 3\n"
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.cfg")


class TestSerialize:
    def test_round_trip(self):
        config = parse_config(SWEEP_TEXT)
        assert parse_config(serialize_config(config)) == config

    def test_round_trip_solve(self, minimal_solve_config):
        config = parse_config(minimal_solve_config + "solve.text = true\ngrid.bc = neumann\n")
        text = serialize_config(config)
        assert "solve.text = true" in text
        assert "grid.bc = neumann" in text
        assert parse_config(text) == config

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "sweep.cfg"
        path.write_text(SWEEP_TEXT)
        assert load_config(path).sweep.L == [20.0, 40.0, 80.0]
