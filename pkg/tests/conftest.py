"""Shared fixtures."""

from pathlib import Path

import pytest

from src.core.config import Scenario

REPO_ROOT = Path(__file__).parent.parent


@pytest.fixture
def small_scenario() -> Scenario:
    """Small moving scenario that keeps Monte Carlo tests fast."""
    return Scenario().with_overrides(
        uav__antennas=4,
        vehicle__antennas=4,
        ris__elements_x=8,
        ris__elements_z=8,
        scatterers__clusters=3,
        scatterers__rays_per_cluster=4,
        simulation__draws=20,
        simulation__threads=1,
    )


@pytest.fixture
def static_scenario(small_scenario: Scenario) -> Scenario:
    """Small scenario with both terminals standing still."""
    return small_scenario.with_overrides(uav__speed=0.0, vehicle__speed=0.0)


@pytest.fixture
def scenario_file(tmp_path: Path):
    """Write scenario text to a temporary YAML file."""

    def write(text: str, name: str = "scenario.yaml") -> Path:
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
