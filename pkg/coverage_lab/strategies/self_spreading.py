"""
Auto-dispersion distribuée par forces (DSS) — Coverage Lab.

Chaque nœud est repoussé par ses voisins situés à moins de R_c, avec une
intensité proportionnelle à sa densité locale μ_i et à l'écart
(R_c − d_ij)/R_c. La loi de force est isolée dans repulsion_force.
"""

from __future__ import annotations

import logging
from collections import deque

import numpy as np

from coverage_lab.exceptions import PreconditionError
from coverage_lab.models import (
    Deployment,
    DssParams,
    GaussianParams,
    SensorField,
    Strategy,
    Termination,
)
from coverage_lab.strategies.base_strategy import BaseStrategy, StrategyOutcome
from coverage_lab.strategies.random_deployers import deploy_gaussian
from coverage_lab.utils.helpers import derive_seed, make_rng

logger = logging.getLogger("coverage_lab.dss")

_reconstruction_logged = False


def _log_reconstruction_once() -> None:
    global _reconstruction_logged
    if not _reconstruction_logged:
        logger.warning(
            "⚠️ Loi de force DSS reconstruite : step_scale · μ_i · (R_c − d)/R_c, direction j→i"
        )
        _reconstruction_logged = True


def repulsion_force(
    positions: np.ndarray, params: DssParams, rng: np.random.Generator
) -> np.ndarray:
    """
    Vecteur de déplacement (n, 2) de chaque nœud.

    Les paires confondues reçoivent une direction aléatoire antisymétrique
    tirée de rng.
    """
    pts = np.asarray(positions, dtype=float).reshape(-1, 2)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    n = len(pts)
    off_diagonal = ~np.eye(n, dtype=bool)
    neighbours = off_diagonal & (dist < params.comm_range)
    density = neighbours.sum(axis=1).astype(float)

    unit = np.zeros_like(diff)
    apart = neighbours & (dist > 0.0)
    unit[apart] = diff[apart] / dist[apart][:, None]
    for i, j in zip(*np.nonzero(np.triu(neighbours & (dist == 0.0)))):
        angle = rng.uniform(0.0, 2.0 * np.pi)
        u = np.array([np.cos(angle), np.sin(angle)])
        unit[i, j] = u
        unit[j, i] = -u

    weight = np.where(neighbours, (params.comm_range - dist) / params.comm_range, 0.0)
    push = (weight[..., None] * unit).sum(axis=1)
    return params.step_scale * density[:, None] * push


def spreading_step(
    positions: np.ndarray, field: SensorField, params: DssParams, rng: np.random.Generator
) -> np.ndarray:
    """Une itération : applique les forces puis ramène les nœuds dans le terrain."""
    moved = np.asarray(positions, dtype=float) + repulsion_force(positions, params, rng)
    moved[:, 0] = np.clip(moved[:, 0], 0.0, field.width)
    moved[:, 1] = np.clip(moved[:, 1], 0.0, field.height)
    return moved


def dss_run(
    dep: Deployment, params: DssParams, seed: int | np.random.Generator
) -> tuple[Deployment, int]:
    """Itère spreading_step jusqu'à stabilisation, oscillation ou max_iters."""
    final, iterations, _ = spread(dep, params, seed)
    return final, iterations


def spread(
    dep: Deployment, params: DssParams, seed: int | np.random.Generator
) -> tuple[Deployment, int, Termination]:
    """Comme dss_run, avec en plus la cause d'arrêt."""
    if len(dep) < 2:
        raise PreconditionError(f"dss_run : au moins 2 nœuds requis (reçu {len(dep)})")
    _log_reconstruction_once()
    rng = make_rng(seed)
    current = dep.positions.copy()
    recent: deque[np.ndarray] = deque(maxlen=params.oscillation_window)
    termination = Termination.MAX_ITERS
    iterations = 0

    while iterations < params.max_iters:
        previous = current
        current = spreading_step(current, dep.field, params, rng)
        iterations += 1
        displacement = float(np.max(np.hypot(*(current - previous).T)))
        if displacement < params.min_displacement:
            termination = Termination.CONVERGED
            break
        if any(np.allclose(current, old, atol=params.min_displacement, rtol=0.0) for old in recent):
            termination = Termination.OSCILLATION
            break
        recent.append(previous)

    logger.info(f"🧲 DSS terminé ({termination.value}) après {iterations} itération(s)")
    return dep.with_positions(current), iterations, termination


class SpreadingStrategy(BaseStrategy):
    """Nœuds largués en grappe autour de la station de base puis dispersés par DSS."""

    name = "DSS"
    kind = Strategy.DSS

    def __init__(
        self, r_s: float, params: DssParams | None = None, gaussian: GaussianParams | None = None
    ):
        super().__init__(r_s)
        self.params = params or DssParams()
        self.gaussian = gaussian

    def run(self, field: SensorField, n: int, seed: int) -> StrategyOutcome:
        self._log_start(n, seed)
        gaussian = self.gaussian or GaussianParams.for_field(field)
        initial = deploy_gaussian(field, n, gaussian, derive_seed(seed, 0), self.r_s)
        if n < 2:
            outcome = StrategyOutcome(deployment=initial)
        else:
            final, iterations, termination = spread(initial, self.params, derive_seed(seed, 1))
            outcome = StrategyOutcome(
                deployment=final, steps=iterations, details={"termination": termination}
            )
        self._log_done(outcome)
        return outcome
