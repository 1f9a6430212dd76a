"""
Orchestrateur de balayages — Coverage Lab.

Exécute le produit cartésien stratégies × nombres de nœuds × graines :
  Étape 0 — Vérification du chemin de sortie (avant tout calcul)
  Étape 1 — Exécution des cellules, en parallèle si jobs > 1
  Étape 2 — Écriture CSV au fil de l'eau, dans l'ordre déterministe
            (stratégie, n, graine), par un seul écrivain
"""

from __future__ import annotations

import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import IO, Any

from coverage_lab.exceptions import OutputError
from coverage_lab.metrics.coverage import union_coverage
from coverage_lab.models import ExperimentConfig, Strategy, SweepResult, SweepRow
from coverage_lab.reporting.writers import ensure_writable, write_rows
from coverage_lab.strategies.base_strategy import BaseStrategy
from coverage_lab.strategies.bidding import BiddingStrategy
from coverage_lab.strategies.genetic import GeneticStrategy
from coverage_lab.strategies.random_deployers import GaussianStrategy, UniformStrategy
from coverage_lab.strategies.self_spreading import SpreadingStrategy

logger = logging.getLogger("coverage_lab.orchestrator")

Cell = tuple[Strategy, int, int]


def build_strategy(kind: Strategy, config: ExperimentConfig) -> BaseStrategy:
    """Instancie la stratégie demandée avec les paramètres de la configuration."""
    r_s = config.sensing_radius
    if kind == Strategy.UNIFORM:
        return UniformStrategy(r_s)
    if kind == Strategy.GAUSSIAN:
        return GaussianStrategy(r_s, config.gaussian_params)
    if kind == Strategy.GA:
        return GeneticStrategy(r_s, config.ga, resolution=config.effective_resolution)
    if kind == Strategy.BIDDING:
        return BiddingStrategy(r_s, config.bidding)
    if kind == Strategy.DSS:
        return SpreadingStrategy(r_s, config.dss, config.gaussian_params)
    raise ValueError(f"stratégie inconnue : {kind}")


def run_cell(config: ExperimentConfig, kind: Strategy, n: int, seed: int) -> SweepRow:
    """Une cellule du balayage ; fonction de module pour rester sérialisable (pickle)."""
    started = time.perf_counter()
    outcome = build_strategy(kind, config).run(config.field, n, seed)
    coverage = union_coverage(outcome.deployment, config.effective_resolution).union_fraction
    wall_ms = (time.perf_counter() - started) * 1000.0 if config.record_timing else 0.0
    return SweepRow(
        strategy=kind,
        n=n,
        seed=seed,
        coverage=min(1.0, max(0.0, coverage)),
        steps=outcome.steps,
        wall_ms=wall_ms,
    )


class SweepRunner:
    """
    Pilote un balayage complet.

    Les lignes terminées sont mises en attente puis écrites dès que le
    préfixe ordonné est complet, de sorte que le CSV partiel d'un
    balayage interrompu reste un préfixe du CSV final.
    """

    def __init__(self, config: ExperimentConfig, jobs: int | None = None):
        self.config = config
        self.jobs = jobs or config.jobs
        self._pending: dict[int, SweepRow] = {}
        self._next = 0
        self._rows: list[SweepRow] = []

    def cells(self) -> list[Cell]:
        strategies = sorted(set(self.config.strategies), key=lambda s: s.value)
        counts = sorted(set(self.config.node_counts))
        seeds = sorted(set(self.config.seeds))
        return [(s, n, seed) for s in strategies for n in counts for seed in seeds]

    def _executor(self) -> Executor:
        if self.jobs > 1:
            return ProcessPoolExecutor(max_workers=self.jobs)
        return ThreadPoolExecutor(max_workers=1)

    # ════════════════════════════════════════
    #  BALAYAGE
    # ════════════════════════════════════════

    async def run(self) -> SweepResult:
        csv_path = ensure_writable(self.config.output.csv_path)
        cells = self.cells()
        logger.info(
            f"🚀 Balayage : {len(cells)} cellule(s), jobs={self.jobs}, sortie={csv_path}"
        )
        self._pending.clear()
        self._next = 0
        self._rows = []

        loop = asyncio.get_running_loop()
        try:
            handle = csv_path.open("w", newline="", encoding="utf-8")
        except OSError as exc:
            raise OutputError(csv_path, str(exc)) from exc

        with handle, self._executor() as executor:
            write_rows(handle, [], header=True)
            handle.flush()
            results = await asyncio.gather(
                *(self._safe_run(loop, executor, handle, i, cell) for i, cell in enumerate(cells)),
                return_exceptions=True,
            )

        failures = [r for r in results if isinstance(r, BaseException)]
        if failures:
            logger.error(f"❌ {len(failures)} cellule(s) en échec ; CSV partiel conservé")
            raise failures[0]

        logger.info(f"✅ Balayage terminé : {len(self._rows)} ligne(s)")
        return SweepResult(rows=self._rows)

    async def _safe_run(
        self, loop: asyncio.AbstractEventLoop, executor: Executor, handle: IO[str], index: int, cell: Cell
    ) -> Any:
        kind, n, seed = cell
        try:
            row = await loop.run_in_executor(executor, run_cell, self.config, kind, n, seed)
        except Exception as exc:
            logger.error(f"[{kind.value} n={n} graine={seed}] Erreur : {exc}")
            raise
        self._pending[index] = row
        self._flush_prefix(handle)
        return row

    def _flush_prefix(self, handle: IO[str]) -> None:
        ready: list[SweepRow] = []
        while self._next in self._pending:
            ready.append(self._pending.pop(self._next))
            self._next += 1
        if ready:
            write_rows(handle, ready, header=False)
            handle.flush()
            self._rows.extend(ready)


def run_sweep(config: ExperimentConfig, jobs: int | None = None) -> SweepResult:
    """Point d'entrée synchrone du balayage."""
    return asyncio.run(SweepRunner(config, jobs).run())
