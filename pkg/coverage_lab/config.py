"""
Configuration centralisée — Coverage Lab.

Deux niveaux :
  - Settings : variables d'environnement (préfixe COVERAGE_LAB_, fichier .env)
  - ExperimentConfig : document JSON versionné décrivant un balayage
"""

from __future__ import annotations

import json
from pathlib import Path

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from coverage_lab.exceptions import ConfigError
from coverage_lab.models import ExperimentConfig, Seed, Strategy

# ── Racine du projet ────────────────────────
PROJECT_ROOT = Path(__file__).resolve().parent.parent

# ── Charger .env ────────────────────────────
_env_path = PROJECT_ROOT / ".env"

SCHEMA_VERSION = 1

# Nombres de nœuds de la table 2
TABLE2_NODE_COUNTS = [50, 100, 150, 200, 250, 300, 400, 500, 550, 586]


class Settings(BaseSettings):
    """Paramètres globaux chargés depuis les variables d'environnement."""

    seed: Seed = Field(default=0, description="Graine maître par défaut (COVERAGE_LAB_SEED)")
    log_level: str = Field(default="INFO")
    jobs: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="COVERAGE_LAB_",
        env_file=str(_env_path),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


def get_settings() -> Settings:
    """Retourne l'instance Settings (relue à chaque appel pour suivre l'environnement)."""
    return Settings()


def default_experiment_config() -> ExperimentConfig:
    """Configuration livrée : terrain 113×113, r_s = 5, GA, table 2, graines 1..10."""
    return ExperimentConfig(
        schema_version=SCHEMA_VERSION,
        strategies=[Strategy.GA],
        node_counts=TABLE2_NODE_COUNTS,
        seeds=list(range(1, 11)),
    )


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """Lit et valide un document de configuration JSON."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"Configuration introuvable : {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON invalide dans {path} : {exc}") from exc
    return parse_experiment_config(raw, source=str(path))


def parse_experiment_config(raw: object, source: str = "<dict>") -> ExperimentConfig:
    """Valide un dict de configuration ; toute erreur devient une ConfigError."""
    if not isinstance(raw, dict):
        raise ConfigError(f"{source} : un objet JSON est attendu")
    if "schema_version" not in raw:
        raise ConfigError(f"{source} : champ schema_version obligatoire")
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"{source} : configuration invalide\n{exc}") from exc
