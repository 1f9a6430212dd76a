"""
Déploiements aléatoires de référence — Coverage Lab.

- Uniforme i.i.d. sur le terrain
- Gaussien 2D centré sur la station de base, axes indépendants,
  ré-échantillonné par rejet pour rester dans le terrain (pas de
  projection sur les bords, qui déformerait la densité)
"""

from __future__ import annotations

import numpy as np

from coverage_lab.exceptions import DegenerateParamsError
from coverage_lab.models import DEFAULT_SENSING_RADIUS, Deployment, GaussianParams, SensorField, Strategy
from coverage_lab.strategies.base_strategy import BaseStrategy, StrategyOutcome
from coverage_lab.utils.helpers import make_rng

# Rejet : au-delà de ce nombre de tirages, un taux d'acceptation < 1 % est fatal
MIN_ACCEPTANCE = 0.01
MIN_DRAWS_BEFORE_CHECK = 10_000
MIN_BATCH = 256


def deploy_uniform(
    field: SensorField, n: int, seed: int, r_s: float = DEFAULT_SENSING_RADIUS
) -> Deployment:
    """n capteurs i.i.d. uniformes, identifiants 1..n, déterministe par graine."""
    if n < 0:
        raise ValueError(f"n doit être ≥ 0 (reçu {n})")
    rng = make_rng(seed)
    positions = np.column_stack([
        rng.uniform(0.0, field.width, n),
        rng.uniform(0.0, field.height, n),
    ])
    return Deployment.from_positions(field, positions, r_s)


def deploy_gaussian(
    field: SensorField,
    n: int,
    params: GaussianParams,
    seed: int,
    r_s: float = DEFAULT_SENSING_RADIUS,
) -> Deployment:
    """
    n capteurs tirés d'une loi normale bivariée centrée sur la station de base.

    Les tirages hors terrain sont rejetés et retirés par lots. Si, après
    MIN_DRAWS_BEFORE_CHECK tirages, moins de 1 % sont acceptés, les
    paramètres sont jugés dégénérés.
    """
    if n < 0:
        raise ValueError(f"n doit être ≥ 0 (reçu {n})")
    rng = make_rng(seed)
    center = np.array([field.base_station.x, field.base_station.y])
    scale = np.array([params.sigma_x, params.sigma_y])

    chunks: list[np.ndarray] = []
    collected = draws = inside_total = 0
    while collected < n:
        batch = max(2 * (n - collected), MIN_BATCH)
        pts = rng.normal(center, scale, size=(batch, 2))
        inside = (
            (pts[:, 0] >= 0.0) & (pts[:, 0] <= field.width)
            & (pts[:, 1] >= 0.0) & (pts[:, 1] <= field.height)
        )
        draws += batch
        inside_total += int(np.count_nonzero(inside))
        kept = pts[inside][: n - collected]
        chunks.append(kept)
        collected += len(kept)
        if collected < n and draws >= MIN_DRAWS_BEFORE_CHECK and inside_total / draws < MIN_ACCEPTANCE:
            raise DegenerateParamsError(
                f"taux d'acceptation {inside_total / draws:.4%} < 1 % après {draws} tirages "
                f"(σx={params.sigma_x}, σy={params.sigma_y})"
            )

    positions = np.concatenate(chunks) if chunks else np.empty((0, 2))
    return Deployment.from_positions(field, positions, r_s)


class UniformStrategy(BaseStrategy):
    """Déploiement uniforme aléatoire."""

    name = "Uniform"
    kind = Strategy.UNIFORM

    def run(self, field: SensorField, n: int, seed: int) -> StrategyOutcome:
        self._log_start(n, seed)
        outcome = StrategyOutcome(deployment=deploy_uniform(field, n, seed, self.r_s))
        self._log_done(outcome)
        return outcome


class GaussianStrategy(BaseStrategy):
    """Protocole gaussien 2D autour de la station de base."""

    name = "Gaussian"
    kind = Strategy.GAUSSIAN

    def __init__(self, r_s: float, params: GaussianParams | None = None):
        super().__init__(r_s)
        self.params = params

    def run(self, field: SensorField, n: int, seed: int) -> StrategyOutcome:
        self._log_start(n, seed)
        params = self.params or GaussianParams.for_field(field)
        outcome = StrategyOutcome(deployment=deploy_gaussian(field, n, params, seed, self.r_s))
        self._log_done(outcome)
        return outcome
