"""
Stratégie de base (abstraite) — Coverage Lab.

Chaque stratégie de déploiement hérite de BaseStrategy et implémente
sa logique de placement ; l'orchestrateur et la CLI ne voient que run().
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from coverage_lab.models import Deployment, SensorField, Strategy


@dataclass
class StrategyOutcome:
    """Déploiement final et nombre d'étapes (générations, tours ou itérations)."""
    deployment: Deployment
    steps: int = 0
    details: dict = field(default_factory=dict)


class BaseStrategy(ABC):
    """Classe abstraite pour toutes les stratégies de déploiement."""

    name: str = "BaseStrategy"
    kind: Strategy

    def __init__(self, r_s: float):
        self.r_s = r_s
        self.logger = logging.getLogger(f"coverage_lab.strategy.{self.name}")

    @abstractmethod
    def run(self, field: SensorField, n: int, seed: int) -> StrategyOutcome:
        """Place n capteurs dans le terrain et retourne le résultat typé."""
        ...

    def _log_start(self, n: int, seed: int) -> None:
        self.logger.info(f"[{self.name}] Démarrage — n={n}, graine={seed}")

    def _log_done(self, outcome: StrategyOutcome) -> None:
        self.logger.info(
            f"[{self.name}] Terminé — {len(outcome.deployment)} capteurs, {outcome.steps} étape(s)"
        )
