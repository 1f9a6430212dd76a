"""Tests de la configuration (environnement et documents JSON)."""

import json

import pytest

from coverage_lab.config import (
    PROJECT_ROOT,
    SCHEMA_VERSION,
    TABLE2_NODE_COUNTS,
    default_experiment_config,
    get_settings,
    load_experiment_config,
    parse_experiment_config,
)
from coverage_lab.exceptions import ConfigError
from coverage_lab.models import Strategy
from coverage_lab.reference import TABLE2


def _write(tmp_path, payload):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload) if not isinstance(payload, str) else payload)
    return path


class TestSettings:
    """Tests pour Settings / get_settings()."""

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("COVERAGE_LAB_SEED", raising=False)
        settings = get_settings()

        assert settings.seed == 0
        assert settings.jobs == 1

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv("COVERAGE_LAB_SEED", "42")

        assert get_settings().seed == 42


class TestExperimentConfig:
    """Tests pour load_experiment_config() / parse_experiment_config()."""

    def test_default_config(self):
        config = default_experiment_config()

        assert config.schema_version == SCHEMA_VERSION
        assert config.strategies == [Strategy.GA]
        assert config.node_counts == TABLE2_NODE_COUNTS == TABLE2.node_counts
        assert config.field.width == 113.0
        assert config.effective_resolution == pytest.approx(0.5)

    def test_load_from_file(self, tmp_path):
        path = _write(tmp_path, {
            "schema_version": 1,
            "strategy": ["uniform", "dss"],
            "node_counts": [10, 20],
            "seeds": [1],
            "dss": {"comm_range": 15.0},
        })
        config = load_experiment_config(path)

        assert config.strategies == [Strategy.UNIFORM, Strategy.DSS]
        assert config.dss.comm_range == 15.0
        assert config.ga.population_size == 100

    def test_single_strategy_is_wrapped(self):
        config = parse_experiment_config(
            {"schema_version": 1, "strategy": "gaussian", "node_counts": [5], "seeds": [0]}
        )

        assert config.strategies == [Strategy.GAUSSIAN]

    def test_schema_version_required(self):
        with pytest.raises(ConfigError, match="schema_version"):
            parse_experiment_config({"node_counts": [5], "seeds": [0]})

    def test_unknown_schema_version(self):
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 2, "node_counts": [5], "seeds": [0]})

    def test_coarse_resolution_rejected(self):
        with pytest.raises(ConfigError):
            parse_experiment_config(
                {"schema_version": 1, "node_counts": [5], "seeds": [0], "resolution": 2.0}
            )

    def test_empty_node_counts_rejected(self):
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 1, "node_counts": [], "seeds": [0]})

    def test_negative_seed_rejected(self):
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 1, "node_counts": [5], "seeds": [-1]})

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ConfigError):
            parse_experiment_config(
                {"schema_version": 1, "strategy": "annealing", "node_counts": [5], "seeds": [0]}
            )

    def test_invalid_json(self, tmp_path):
        with pytest.raises(ConfigError, match="JSON invalide"):
            load_experiment_config(_write(tmp_path, "{not json"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_experiment_config(tmp_path / "absent.json")

    @pytest.mark.parametrize("name", ["default.json", "table2.json", "table3.json", "baselines.json"])
    def test_shipped_configs_are_valid(self, name):
        config = load_experiment_config(PROJECT_ROOT / "configs" / name)

        assert config.schema_version == SCHEMA_VERSION
