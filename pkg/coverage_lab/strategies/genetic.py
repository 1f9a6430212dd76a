"""
Algorithme génétique par sous-zones — Coverage Lab.

Le terrain est découpé en sous-zones (geometry.field.partition) ; dans
chacune, une population de chromosomes (un chromosome = un placement des
nœuds de la sous-zone, un gène = (ID, X, Y, C)) évolue :

  1. population initiale : population_size placements uniformes
  2. sélection : 3 chromosomes tirés au hasard, 2 retenus à la roulette
  3. croisement à deux points (probabilité crossover_rate, sinon copie)
  4. mutation : ré-échantillonnage des coordonnées, gène par gène
  5. parents + descendants (2× population), tri par fitness, élites
     conservées, troncature à population_size
  6. arrêt quand best(g) − best(g − stop_window) < epsilon_stop ou
     max_generations (stop_window = 1 : règle sur deux générations)

Les sous-zones sont indépendantes (fitness découpée à la cellule) et
peuvent évoluer en parallèle ; chacune a sa graine dérivée de la graine
maître et de son indice.
"""

from __future__ import annotations

import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from coverage_lab.exceptions import PreconditionError
from coverage_lab.geometry.field import clipped_areas, partition
from coverage_lab.metrics.coverage import (
    DEFAULT_RESOLUTION_DIVISOR,
    CoverageGrid,
    check_resolution,
    total_fitness,
    union_coverage,
)
from coverage_lab.models import (
    DEFAULT_SENSING_RADIUS,
    CoverageReport,
    Deployment,
    GaHistory,
    GaParams,
    Gene,
    GenerationRecord,
    Point,
    Rect,
    Sensor,
    SensorField,
    Strategy,
    SubareaCoverage,
    Termination,
)
from coverage_lab.strategies.base_strategy import BaseStrategy, StrategyOutcome
from coverage_lab.utils.helpers import derive_seed, make_rng

logger = logging.getLogger("coverage_lab.genetic")


# ════════════════════════════════════════════
#  Chromosome
# ════════════════════════════════════════════

@dataclass
class Chromosome:
    """Placement candidat des nœuds d'une sous-zone."""
    ids: np.ndarray
    positions: np.ndarray
    coverage: np.ndarray  # C_i par gène, NaN quand périmé
    fitness: Optional[float] = None

    def __len__(self) -> int:
        return len(self.ids)

    def copy(self) -> Chromosome:
        return Chromosome(
            ids=self.ids.copy(),
            positions=self.positions.copy(),
            coverage=self.coverage.copy(),
            fitness=self.fitness,
        )

    @property
    def genes(self) -> list[Gene]:
        return [
            Gene(id=int(i), x=float(x), y=float(y), c=None if np.isnan(c) else float(c))
            for i, (x, y), c in zip(self.ids, self.positions, self.coverage)
        ]

    def to_sensors(self, r_s: float) -> list[Sensor]:
        return [
            Sensor(id=int(i), pos=Point(x=float(x), y=float(y)), r_s=r_s)
            for i, (x, y) in zip(self.ids, self.positions)
        ]


Population = list[Chromosome]


class SubareaFitness:
    """Couverture union d'un chromosome sur sa sous-zone (disques découpés à la cellule)."""

    def __init__(self, subarea: Rect, r_s: float, resolution: float):
        check_resolution(resolution, r_s)
        self.subarea = subarea
        self.r_s = r_s
        self.grid = CoverageGrid.for_region(subarea, resolution)

    def __call__(self, chromosome: Chromosome) -> float:
        if chromosome.fitness is None:
            self.grid.reset()
            self.grid.mark(chromosome.positions, self.r_s)
            chromosome.fitness = self.grid.fraction
        stale = np.isnan(chromosome.coverage)
        if stale.any():
            chromosome.coverage[stale] = clipped_areas(
                chromosome.positions[stale], [self.r_s] * int(stale.sum()), self.subarea
            )
        return chromosome.fitness


def _uniform_positions(subarea: Rect, count: int, rng: np.random.Generator) -> np.ndarray:
    return np.column_stack([
        rng.uniform(subarea.x0, subarea.x1, count),
        rng.uniform(subarea.y0, subarea.y1, count),
    ])


# ════════════════════════════════════════════
#  Opérateurs
# ════════════════════════════════════════════

def init_population(
    subarea: Rect,
    quota: int,
    params: GaParams,
    seed: int | np.random.Generator,
    *,
    r_s: float = DEFAULT_SENSING_RADIUS,
    resolution: float | None = None,
    id_offset: int = 0,
    evaluator: SubareaFitness | None = None,
) -> Population:
    """population_size placements uniformes indépendants, tous évalués."""
    if quota < 1:
        raise PreconditionError(f"quota doit être ≥ 1 (reçu {quota})")
    rng = make_rng(seed)
    evaluator = evaluator or SubareaFitness(
        subarea, r_s, resolution or r_s / DEFAULT_RESOLUTION_DIVISOR
    )
    ids = np.arange(id_offset + 1, id_offset + quota + 1)
    population: Population = []
    for _ in range(params.population_size):
        chromosome = Chromosome(
            ids=ids.copy(),
            positions=_uniform_positions(subarea, quota, rng),
            coverage=np.full(quota, np.nan),
        )
        evaluator(chromosome)
        population.append(chromosome)
    return population


def _roulette(weights: np.ndarray, rng: np.random.Generator) -> int:
    total = float(weights.sum())
    if total <= 0.0:
        return int(rng.integers(len(weights)))
    return int(rng.choice(len(weights), p=weights / total))


def select_parents(pop: Population, rng: np.random.Generator) -> tuple[Chromosome, Chromosome]:
    """Tire 3 chromosomes distincts puis en retient 2 à la roulette, sans remise."""
    if len(pop) < 3:
        raise PreconditionError(f"sélection : au moins 3 chromosomes requis (reçu {len(pop)})")
    triple = [pop[int(i)] for i in rng.choice(len(pop), size=3, replace=False)]
    weights = np.array([c.fitness or 0.0 for c in triple])
    first = _roulette(weights, rng)
    rest = [k for k in range(3) if k != first]
    second = rest[_roulette(weights[rest], rng)]
    return triple[first], triple[second]


def crossover(
    a: Chromosome,
    b: Chromosome,
    rng: np.random.Generator,
    *,
    cuts: tuple[int, int] | None = None,
) -> tuple[Chromosome, Chromosome]:
    """Croisement à deux points : les enfants échangent la tranche [i, j)."""
    n = len(a)
    if n < 1 or len(b) != n:
        raise PreconditionError(f"croisement : tailles incompatibles ({n} vs {len(b)})")
    if cuts is None:
        i, j = sorted(int(k) for k in rng.integers(0, n + 1, size=2))
    else:
        i, j = cuts
        if not 0 <= i <= j <= n:
            raise PreconditionError(f"points de coupe invalides : {cuts}")

    child1, child2 = a.copy(), b.copy()
    if i < j:
        # Les gènes gardent leur cache C_i : leur position ne change pas
        for dst, src in ((child1, b), (child2, a)):
            dst.ids[i:j] = src.ids[i:j]
            dst.positions[i:j] = src.positions[i:j]
            dst.coverage[i:j] = src.coverage[i:j]
            dst.fitness = None
    return child1, child2


def mutate(c: Chromosome, rate: float, subarea: Rect, rng: np.random.Generator) -> Chromosome:
    """Chaque gène, avec probabilité rate, reçoit de nouvelles coordonnées uniformes."""
    if not 0.0 <= rate <= 1.0:
        raise PreconditionError(f"taux de mutation hors [0,1] : {rate}")
    mask = rng.random(len(c)) < rate
    out = c.copy()
    count = int(mask.sum())
    if count:
        out.positions[mask] = _uniform_positions(subarea, count, rng)
        out.coverage[mask] = np.nan
        out.fitness = None
    return out


# ════════════════════════════════════════════
#  Boucle générationnelle
# ════════════════════════════════════════════

def evolve(
    subarea: Rect,
    quota: int,
    params: GaParams,
    seed: int,
    *,
    r_s: float = DEFAULT_SENSING_RADIUS,
    resolution: float | None = None,
    id_offset: int = 0,
    subarea_index: int = 0,
) -> tuple[Chromosome, GaHistory]:
    """Fait évoluer une sous-zone et retourne le meilleur chromosome et l'historique."""
    rng = make_rng(seed)
    evaluate = SubareaFitness(subarea, r_s, resolution or r_s / DEFAULT_RESOLUTION_DIVISOR)
    population = init_population(
        subarea, quota, params, rng, r_s=r_s, id_offset=id_offset, evaluator=evaluate
    )
    population.sort(key=lambda c: c.fitness, reverse=True)

    records = [_record(0, population)]
    termination = Termination.MAX_GENERATIONS

    for generation in range(1, params.max_generations + 1):
        offspring: Population = []
        while len(offspring) < params.population_size:
            a, b = select_parents(population, rng)
            if rng.random() < params.crossover_rate:
                c1, c2 = crossover(a, b, rng)
            else:
                c1, c2 = a.copy(), b.copy()
            offspring.append(mutate(c1, params.mutation_rate, subarea, rng))
            offspring.append(mutate(c2, params.mutation_rate, subarea, rng))
        del offspring[params.population_size:]
        for child in offspring:
            evaluate(child)

        # Population intermédiaire = 2× la population, triée : les élites en tête
        population = sorted(population + offspring, key=lambda c: c.fitness, reverse=True)[
            : params.population_size
        ]

        records.append(_record(generation, population))
        logger.debug(
            f"Sous-zone {subarea_index} — génération {generation} : "
            f"best={records[-1].best:.5f}, moyenne={records[-1].mean:.5f}"
        )

        if params.stop_rule == "delta" and _has_plateaued(records, params):
            termination = Termination.EPSILON
            break

    history = GaHistory(subarea=subarea_index, records=records, termination=termination)
    return population[0], history


def _has_plateaued(records: list[GenerationRecord], params: GaParams) -> bool:
    """Vrai si le meilleur n'a pas gagné epsilon_stop sur les stop_window dernières générations."""
    window = params.stop_window
    if len(records) <= window:
        return False
    return records[-1].best - records[-1 - window].best < params.epsilon_stop


def _record(generation: int, population: Population) -> GenerationRecord:
    fitnesses = [c.fitness for c in population]
    return GenerationRecord(generation=generation, best=max(fitnesses), mean=statistics.fmean(fitnesses))


def _evolve_task(task: tuple) -> tuple[Chromosome, GaHistory]:
    cell, quota, params, seed, r_s, resolution, offset, index = task
    return evolve(cell, quota, params, seed, r_s=r_s, resolution=resolution,
                  id_offset=offset, subarea_index=index)


# ════════════════════════════════════════════
#  Terrain complet
# ════════════════════════════════════════════

def optimize_field(
    field: SensorField,
    n: int,
    params: GaParams | None = None,
    seed: int = 0,
    *,
    r_s: float = DEFAULT_SENSING_RADIUS,
    resolution: float | None = None,
    jobs: int = 1,
) -> tuple[Deployment, CoverageReport, list[GaHistory]]:
    """
    Partitionne le terrain, fait évoluer chaque sous-zone et fusionne les
    meilleurs chromosomes. Le rapport porte la couverture union du
    déploiement fusionné, les GC_i par sous-zone et leur total pondéré.
    """
    if n < 1:
        raise PreconditionError(f"n doit être ≥ 1 (reçu {n})")
    params = params or GaParams()
    resolution = resolution or r_s / DEFAULT_RESOLUTION_DIVISOR
    grid = partition(field, n, params.target_per_subarea)
    offsets = grid.id_offsets()
    tasks = [
        (cell, quota, params, derive_seed(seed, index), r_s, resolution, offsets[index], index)
        for index, (cell, quota) in enumerate(zip(grid.cells, grid.node_quota))
    ]
    logger.info(f"🧬 GA — n={n}, {grid.rows}×{grid.cols} sous-zone(s), graine={seed}, jobs={jobs}")

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            results = list(pool.map(_evolve_task, tasks))
    else:
        results = [_evolve_task(task) for task in tasks]

    sensors: list[Sensor] = []
    per_subarea: list[SubareaCoverage] = []
    histories: list[GaHistory] = []
    for index, ((best, history), cell) in enumerate(zip(results, grid.cells)):
        sensors.extend(best.to_sensors(r_s))
        per_subarea.append(SubareaCoverage(index=index, coverage=best.fitness, area=cell.area))
        histories.append(history)

    deployment = Deployment(sensors=sorted(sensors, key=lambda s: s.id), field=field)
    report = union_coverage(deployment, resolution)
    partition_total = total_fitness([(s.coverage, s.area) for s in per_subarea], field)
    report = report.model_copy(update={"per_subarea": per_subarea, "partition_total": partition_total})
    logger.info(
        f"GA terminé — union={report.union_fraction:.4f}, total sous-zones={partition_total:.4f}"
    )
    return deployment, report, histories


def find_saturation_point(
    field: SensorField,
    seeds: list[int],
    params: GaParams | None = None,
    *,
    r_s: float = DEFAULT_SENSING_RADIUS,
    resolution: float | None = None,
    threshold: float = 0.999,
    start: int = 10,
    stop: int = 1000,
    step: int = 10,
    jobs: int = 1,
) -> Optional[int]:
    """Plus petit n (pas de step) dont la couverture GA moyenne atteint le seuil."""
    for n in range(start, stop + 1, step):
        coverages = [
            optimize_field(field, n, params, seed, r_s=r_s, resolution=resolution, jobs=jobs)[1].union_fraction
            for seed in seeds
        ]
        mean = statistics.fmean(coverages)
        logger.info(f"Saturation — n={n} : couverture moyenne {mean:.4f}")
        if mean >= threshold:
            return n
    return None


class GeneticStrategy(BaseStrategy):
    """Algorithme génétique par sous-zones."""

    name = "Genetic"
    kind = Strategy.GA

    def __init__(
        self,
        r_s: float,
        params: GaParams | None = None,
        resolution: float | None = None,
        jobs: int = 1,
    ):
        super().__init__(r_s)
        self.params = params or GaParams()
        self.resolution = resolution
        self.jobs = jobs

    def run(self, field: SensorField, n: int, seed: int) -> StrategyOutcome:
        self._log_start(n, seed)
        deployment, report, histories = optimize_field(
            field, n, self.params, seed, r_s=self.r_s, resolution=self.resolution, jobs=self.jobs
        )
        outcome = StrategyOutcome(
            deployment=deployment,
            steps=max(h.generations for h in histories),
            details={"report": report, "histories": histories},
        )
        self._log_done(outcome)
        return outcome
