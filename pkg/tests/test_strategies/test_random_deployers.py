"""Tests des déploiements aléatoires de référence."""

import numpy as np
import pytest

from coverage_lab.exceptions import DegenerateParamsError
from coverage_lab.metrics.coverage import expected_random_coverage, union_coverage
from coverage_lab.models import GaussianParams, Point, SensorField, Strategy
from coverage_lab.strategies.random_deployers import (
    GaussianStrategy,
    UniformStrategy,
    deploy_gaussian,
    deploy_uniform,
)


class TestUniform:
    """Tests pour deploy_uniform()."""

    def test_count_and_ids(self, default_field):
        dep = deploy_uniform(default_field, 25, seed=1)

        assert len(dep) == 25
        assert [s.id for s in dep.sensors] == list(range(1, 26))

    def test_deterministic(self, default_field):
        a = deploy_uniform(default_field, 30, seed=42)
        b = deploy_uniform(default_field, 30, seed=42)
        c = deploy_uniform(default_field, 30, seed=43)

        assert np.array_equal(a.positions, b.positions)
        assert not np.array_equal(a.positions, c.positions)

    def test_zero_nodes(self, default_field):
        assert len(deploy_uniform(default_field, 0, seed=1)) == 0

    def test_mean_coverage_near_random_formula(self, default_field):
        """Moyenne sur 30 graines proche de 1 − exp(−λπr²) (effets de bord inclus)."""
        n = 50
        coverages = [union_coverage(deploy_uniform(default_field, n, seed=s)).union_fraction for s in range(30)]
        predicted = expected_random_coverage(n / default_field.area, 5.0)

        assert np.mean(coverages) == pytest.approx(predicted, abs=0.03)


class TestGaussian:
    """Tests pour deploy_gaussian()."""

    def test_all_inside_field(self, default_field):
        params = GaussianParams.for_field(default_field)
        dep = deploy_gaussian(default_field, 500, params, seed=7)

        assert len(dep) == 500
        pos = dep.positions
        assert pos.min() >= 0.0 and pos.max() <= default_field.width

    def test_centered_on_base_station(self):
        field = SensorField(width=100, height=100, base_station=Point(x=30, y=60))
        dep = deploy_gaussian(field, 2_000, GaussianParams(sigma_x=5, sigma_y=5), seed=3)

        center = dep.positions.mean(axis=0)
        assert center[0] == pytest.approx(30.0, abs=0.5)
        assert center[1] == pytest.approx(60.0, abs=0.5)

    def test_deterministic(self, default_field):
        params = GaussianParams.for_field(default_field)
        a = deploy_gaussian(default_field, 100, params, seed=9)
        b = deploy_gaussian(default_field, 100, params, seed=9)

        assert np.array_equal(a.positions, b.positions)

    def test_degenerate_params(self):
        """Station de base au coin et σ gigantesque : acceptation < 1 %."""
        field = SensorField(width=10, height=10, base_station=Point(x=0, y=0))
        with pytest.raises(DegenerateParamsError):
            deploy_gaussian(field, 10, GaussianParams(sigma_x=1e6, sigma_y=1e6), seed=1)


class TestStrategies:
    """Tests des stratégies enveloppes."""

    def test_uniform_strategy(self, default_field):
        outcome = UniformStrategy(5.0).run(default_field, 10, seed=1)

        assert UniformStrategy.kind == Strategy.UNIFORM
        assert len(outcome.deployment) == 10
        assert outcome.steps == 0

    def test_gaussian_strategy_default_sigma(self, default_field):
        outcome = GaussianStrategy(5.0).run(default_field, 10, seed=1)
        expected = deploy_gaussian(default_field, 10, GaussianParams.for_field(default_field), 1)

        assert np.array_equal(outcome.deployment.positions, expected.positions)
