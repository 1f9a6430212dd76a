"""
Fixtures pytest — Coverage Lab.
"""

import pytest

from coverage_lab.config import SCHEMA_VERSION
from coverage_lab.geometry.field import make_field
from coverage_lab.models import (
    Deployment,
    DssParams,
    ExperimentConfig,
    GaParams,
    OutputSpec,
    Point,
    Sensor,
    SensorField,
    Strategy,
)


@pytest.fixture
def field_100() -> SensorField:
    """Terrain 100×100, station de base au centre."""
    return make_field(100.0, 100.0)


@pytest.fixture
def default_field() -> SensorField:
    """Terrain par défaut 113×113."""
    return SensorField()


@pytest.fixture
def centered_sensor() -> Sensor:
    return Sensor(id=1, pos=Point(x=50.0, y=50.0), r_s=5.0)


@pytest.fixture
def two_sensor_deployment(field_100) -> Deployment:
    """Deux capteurs symétriques en (25, 50) et (75, 50)."""
    return Deployment(
        sensors=[
            Sensor(id=1, pos=Point(x=25.0, y=50.0)),
            Sensor(id=2, pos=Point(x=75.0, y=50.0)),
        ],
        field=field_100,
    )


@pytest.fixture
def small_ga_params() -> GaParams:
    """Paramètres GA réduits pour des tests rapides."""
    return GaParams(
        population_size=12,
        max_generations=6,
        target_per_subarea=20,
        stop_rule="fixed",
    )


@pytest.fixture
def fast_dss_params() -> DssParams:
    return DssParams(comm_range=20.0, step_scale=1.0, max_iters=200)


@pytest.fixture
def sweep_config(tmp_path) -> ExperimentConfig:
    """Petit balayage uniforme écrivant dans tmp_path."""
    return ExperimentConfig(
        schema_version=SCHEMA_VERSION,
        strategies=[Strategy.UNIFORM],
        node_counts=[20, 50],
        seeds=[1, 2, 3],
        output=OutputSpec(dir=tmp_path / "results", csv="sweep.csv", plot="sweep.svg"),
    )
