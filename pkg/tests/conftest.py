"""Test fixtures for gpsolid."""

import sys
import pytest
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent.resolve()
sys.path.insert(0, str(PROJECT_ROOT))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="Run desk-scale reproductions")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale reproduction, skipped without --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def project_root():
    return PROJECT_ROOT


@pytest.fixture
def vdw_1d():
    from gpsolid.potential import make_potential
    return make_potential("vdw", {"c": 1.0}, dimension=1)


@pytest.fixture
def gaussian_1d():
    from gpsolid.potential import make_potential
    return make_potential("gaussian", dimension=1)


@pytest.fixture
def gaussian_2d():
    from gpsolid.potential import make_potential
    return make_potential("gaussian", dimension=2)


@pytest.fixture
def out_dir(tmp_path, monkeypatch):
    """A scratch output directory with GPSOLID_OUT cleared."""
    monkeypatch.delenv("GPSOLID_OUT", raising=False)
    return tmp_path / "out"


@pytest.fixture
def minimal_solve_config():
    """A minimal valid solve configuration."""
    return "\n".join([
        "run.command = solve",
        "potential.family = gaussian",
        "grid.extent = 4",
        "grid.spacing = 0.25",
        "solve.mu = 1",
    ]) + "\n"
