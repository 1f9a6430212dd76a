"""
Modèles de données — Coverage Lab.

Tous les objets échangés entre géométrie, métriques, stratégies,
orchestrateur et rapports sont définis ici pour garantir typage,
validation et sérialisation cohérents. Les valeurs sont immuables
après construction.
"""

from __future__ import annotations

import math
import statistics
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# ── Valeurs par défaut du banc d'essai ──────
DEFAULT_FIELD_SIZE = 113.0
DEFAULT_SENSING_RADIUS = 5.0
BOUNDS_TOLERANCE = 1e-9

Seed = Annotated[int, Field(ge=0, lt=2**64, description="Graine 64 bits non signée")]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)


# ════════════════════════════════════════════
#  Enums
# ════════════════════════════════════════════

class Strategy(str, Enum):
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"
    GA = "ga"
    BIDDING = "bidding"
    DSS = "dss"


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PARTIAL = "PARTIAL"


class Termination(str, Enum):
    EPSILON = "epsilon"
    MAX_GENERATIONS = "max_generations"
    MAX_ITERS = "max_iters"
    CONVERGED = "converged"
    OSCILLATION = "oscillation"
    NO_MESSAGES = "no_messages"
    MAX_ROUNDS = "max_rounds"


# ════════════════════════════════════════════
#  Géométrie
# ════════════════════════════════════════════

class Point(_Frozen):
    x: float
    y: float

    def distance_to(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class Rect(_Frozen):
    """Rectangle aligné sur les axes, bornes fermées."""
    x0: float
    y0: float
    x1: float
    y1: float

    @model_validator(mode="after")
    def _ordered(self) -> Rect:
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError(f"rectangle inversé : ({self.x0},{self.y0})-({self.x1},{self.y1})")
        return self

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> Point:
        return Point(x=(self.x0 + self.x1) / 2, y=(self.y0 + self.y1) / 2)

    def contains(self, p: Point, tol: float = 0.0) -> bool:
        return (self.x0 - tol <= p.x <= self.x1 + tol) and (self.y0 - tol <= p.y <= self.y1 + tol)


class SensorField(_Frozen):
    """Terrain rectangulaire [0,width]×[0,height] avec sa station de base."""
    width: float = Field(default=DEFAULT_FIELD_SIZE, gt=0)
    height: float = Field(default=DEFAULT_FIELD_SIZE, gt=0)
    base_station: Point

    @model_validator(mode="before")
    @classmethod
    def _default_base_station(cls, data: Any) -> Any:
        # Station de base au centre du terrain par défaut
        if isinstance(data, dict) and data.get("base_station") is None:
            data = dict(data)
            width = data.get("width", DEFAULT_FIELD_SIZE)
            height = data.get("height", DEFAULT_FIELD_SIZE)
            data["base_station"] = {"x": width / 2, "y": height / 2}
        return data

    @model_validator(mode="after")
    def _base_station_inside(self) -> SensorField:
        if not self.rect.contains(self.base_station):
            raise ValueError("la station de base doit être dans le terrain")
        return self

    @property
    def rect(self) -> Rect:
        return Rect(x0=0.0, y0=0.0, x1=self.width, y1=self.height)

    @property
    def area(self) -> float:
        return self.width * self.height


class Sensor(_Frozen):
    id: int = Field(..., ge=1)
    pos: Point
    r_s: float = Field(default=DEFAULT_SENSING_RADIUS, gt=0, description="Rayon de détection")


class Deployment(_Frozen):
    """Liste ordonnée de capteurs posés dans un terrain."""
    sensors: list[Sensor] = Field(default_factory=list)
    field: SensorField

    @model_validator(mode="after")
    def _check(self) -> Deployment:
        ids = [s.id for s in self.sensors]
        if sorted(ids) != list(range(1, len(ids) + 1)):
            raise ValueError("les identifiants doivent former 1..n sans doublon")
        bounds = self.field.rect
        for s in self.sensors:
            if not bounds.contains(s.pos, tol=BOUNDS_TOLERANCE):
                raise ValueError(f"capteur {s.id} hors du terrain : ({s.pos.x}, {s.pos.y})")
        return self

    def __len__(self) -> int:
        return len(self.sensors)

    @property
    def positions(self) -> np.ndarray:
        """Positions (n, 2) en numpy."""
        if not self.sensors:
            return np.empty((0, 2))
        return np.array([[s.pos.x, s.pos.y] for s in self.sensors], dtype=float)

    @property
    def radii(self) -> np.ndarray:
        return np.array([s.r_s for s in self.sensors], dtype=float)

    @classmethod
    def from_positions(
        cls, field: SensorField, positions: np.ndarray, r_s: float | np.ndarray = DEFAULT_SENSING_RADIUS
    ) -> Deployment:
        """Construit un déploiement numéroté 1..n à partir d'un tableau (n, 2)."""
        positions = np.asarray(positions, dtype=float).reshape(-1, 2)
        radii = np.broadcast_to(np.asarray(r_s, dtype=float), (len(positions),))
        sensors = [
            Sensor(id=i + 1, pos=Point(x=float(x), y=float(y)), r_s=float(r))
            for i, ((x, y), r) in enumerate(zip(positions, radii))
        ]
        return cls(sensors=sensors, field=field)

    def with_positions(self, positions: np.ndarray) -> Deployment:
        """Même capteurs (ids, rayons), nouvelles positions."""
        positions = np.asarray(positions, dtype=float).reshape(-1, 2)
        sensors = [
            s.model_copy(update={"pos": Point(x=float(x), y=float(y))})
            for s, (x, y) in zip(self.sensors, positions)
        ]
        return Deployment(sensors=sensors, field=self.field)


class SubareaGrid(_Frozen):
    """Partition du terrain en rows×cols sous-zones avec leurs quotas de nœuds."""
    rows: int = Field(..., ge=1)
    cols: int = Field(..., ge=1)
    cells: list[Rect]
    node_quota: list[int]

    @model_validator(mode="after")
    def _check(self) -> SubareaGrid:
        if len(self.cells) != self.rows * self.cols or len(self.node_quota) != len(self.cells):
            raise ValueError("cells / node_quota incohérents avec rows×cols")
        if self.node_quota and max(self.node_quota) - min(self.node_quota) > 1:
            raise ValueError("quotas déséquilibrés (écart > 1)")
        return self

    @property
    def p(self) -> int:
        return len(self.cells)

    @property
    def total_nodes(self) -> int:
        return sum(self.node_quota)

    def id_offsets(self) -> list[int]:
        """Premier identifiant - 1 de chaque sous-zone (numérotation globale 1..n)."""
        offsets, acc = [], 0
        for q in self.node_quota:
            offsets.append(acc)
            acc += q
        return offsets


# ════════════════════════════════════════════
#  Couverture
# ════════════════════════════════════════════

class SubareaCoverage(_Frozen):
    index: int
    coverage: float = Field(..., ge=0.0, le=1.0, description="GC_i")
    area: float = Field(..., gt=0)


class CoverageReport(_Frozen):
    union_fraction: float = Field(..., ge=0.0, le=1.0)
    naive_sum_fraction: float = Field(..., ge=0.0)
    overlap_excess: float
    per_subarea: list[SubareaCoverage] = Field(default_factory=list)
    partition_total: Optional[float] = None


# ════════════════════════════════════════════
#  Déploiements de référence
# ════════════════════════════════════════════

class GaussianParams(_Frozen):
    sigma_x: float = Field(..., gt=0)
    sigma_y: float = Field(..., gt=0)

    @classmethod
    def for_field(cls, field: SensorField) -> GaussianParams:
        """Écarts-types par défaut : un quart des dimensions du terrain."""
        return cls(sigma_x=field.width / 4, sigma_y=field.height / 4)


# ════════════════════════════════════════════
#  Algorithme génétique
# ════════════════════════════════════════════

class Gene(_Frozen):
    """Gène (ID, X, Y, C) : un nœud, sa position et sa couverture découpée."""
    id: int
    x: float
    y: float
    c: Optional[float] = Field(default=None, description="None tant que le cache est périmé")


class GaParams(_Frozen):
    population_size: int = Field(default=100, ge=4)
    crossover_rate: float = Field(default=0.85, ge=0.0, le=1.0)
    mutation_rate: float = Field(default=0.05, ge=0.0, le=1.0)
    elite_fraction: float = Field(default=0.01, ge=0.0, le=1.0)
    epsilon_stop: float = Field(default=0.001, ge=0.0)
    max_generations: int = Field(default=50, ge=1)
    target_per_subarea: int = Field(default=50, ge=1)
    stop_rule: Literal["delta", "fixed"] = "delta"
    stop_window: int = Field(default=10, ge=1, description="Générations comparées par la règle Δ")

    @property
    def elite_count(self) -> int:
        return max(1, round(self.elite_fraction * self.population_size))


class GenerationRecord(_Frozen):
    generation: int
    best: float
    mean: float


class GaHistory(_Frozen):
    subarea: int = 0
    records: list[GenerationRecord] = Field(default_factory=list)
    termination: Termination = Termination.MAX_GENERATIONS

    @model_validator(mode="after")
    def _elitist(self) -> GaHistory:
        bests = [r.best for r in self.records]
        if any(b < a for a, b in zip(bests, bests[1:])):
            raise ValueError("la meilleure fitness doit être non décroissante")
        return self

    @property
    def best_fitness(self) -> float:
        return self.records[-1].best if self.records else 0.0

    @property
    def generations(self) -> int:
        return self.records[-1].generation if self.records else 0


# ════════════════════════════════════════════
#  Voronoï, enchères, auto-dispersion
# ════════════════════════════════════════════

class VoronoiCell(_Frozen):
    owner: int
    vertices: list[Point] = Field(default_factory=list)

    @property
    def polygon(self):
        from shapely.geometry import Polygon

        return Polygon([(v.x, v.y) for v in self.vertices])

    @property
    def area(self) -> float:
        return float(self.polygon.area) if len(self.vertices) >= 3 else 0.0


class MobileSensor(_Frozen):
    sensor: Sensor
    base_price: float = Field(default=0.0, ge=0.0)
    settled: bool = False


class Bid(_Frozen):
    bidder: int
    target: Point
    value: float
    mobile: int


class BiddingRound(_Frozen):
    index: int
    bids: list[Bid] = Field(default_factory=list)
    accepted: list[Bid] = Field(default_factory=list, description="Triées par valeur décroissante")


class DssParams(_Frozen):
    comm_range: float = Field(default=20.0, gt=0, description="R_c")
    step_scale: float = Field(default=0.01, gt=0)
    max_iters: int = Field(default=200, ge=1)
    oscillation_window: int = Field(default=4, ge=1)
    min_displacement: float = Field(default=1e-3, gt=0)


class BiddingParams(_Frozen):
    mobile_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    max_rounds: int = Field(default=20, ge=1)


# ════════════════════════════════════════════
#  Expériences
# ════════════════════════════════════════════

class OutputSpec(_Frozen):
    dir: Path = Path("results")
    csv: str = "sweep.csv"
    plot: Optional[str] = "sweep.svg"

    @property
    def csv_path(self) -> Path:
        return self.dir / self.csv

    @property
    def plot_path(self) -> Optional[Path]:
        return self.dir / self.plot if self.plot else None


class ExperimentConfig(_Frozen):
    """Description complète et reproductible d'un balayage."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False, populate_by_name=True)

    schema_version: Literal[1]
    field: SensorField = Field(default_factory=lambda: SensorField())
    sensing_radius: float = Field(default=DEFAULT_SENSING_RADIUS, gt=0)
    strategies: list[Strategy] = Field(default=[Strategy.GA], alias="strategy", min_length=1)
    ga: GaParams = Field(default_factory=GaParams)
    gaussian: Optional[GaussianParams] = None
    dss: DssParams = Field(default_factory=DssParams)
    bidding: BiddingParams = Field(default_factory=BiddingParams)
    node_counts: list[Annotated[int, Field(ge=1)]] = Field(..., min_length=1)
    seeds: list[Seed] = Field(..., min_length=1)
    resolution: Optional[float] = Field(default=None, gt=0)
    output: OutputSpec = Field(default_factory=OutputSpec)
    jobs: int = Field(default=1, ge=1)
    record_timing: bool = False

    @field_validator("strategies", mode="before")
    @classmethod
    def _one_or_many(cls, v: Any) -> Any:
        return [v] if isinstance(v, (str, Strategy)) else v

    @model_validator(mode="after")
    def _resolution_resolves_disks(self) -> ExperimentConfig:
        if self.resolution is not None and self.resolution > self.sensing_radius / 5:
            raise ValueError("resolution doit être ≤ r_s/5")
        return self

    @property
    def effective_resolution(self) -> float:
        return self.resolution if self.resolution is not None else self.sensing_radius / 10

    @property
    def gaussian_params(self) -> GaussianParams:
        return self.gaussian or GaussianParams.for_field(self.field)


class SweepRow(_Frozen):
    strategy: Strategy
    n: int
    seed: Seed
    coverage: float = Field(..., ge=0.0, le=1.0)
    steps: int = Field(default=0, ge=0)
    wall_ms: float = Field(default=0.0, ge=0.0)

    @property
    def sort_key(self) -> tuple[str, int, int]:
        return (self.strategy.value, self.n, self.seed)


class SweepResult(_Frozen):
    rows: list[SweepRow] = Field(default_factory=list)

    def sorted_rows(self) -> list[SweepRow]:
        return sorted(self.rows, key=lambda r: r.sort_key)

    def strategies(self) -> list[Strategy]:
        return sorted({r.strategy for r in self.rows}, key=lambda s: s.value)

    def coverages(self, strategy: Strategy, n: int) -> list[float]:
        return [r.coverage for r in self.sorted_rows() if r.strategy == strategy and r.n == n]

    def mean_curve(self, strategy: Strategy) -> dict[int, float]:
        """Couverture moyenne sur les graines, par nombre de nœuds croissant."""
        counts = sorted({r.n for r in self.rows if r.strategy == strategy})
        return {n: statistics.fmean(self.coverages(strategy, n)) for n in counts}


# ════════════════════════════════════════════
#  Comparaison aux tables de référence
# ════════════════════════════════════════════

class ReferenceRow(_Frozen):
    n: int
    mean: float
    std: float
    seeds: int
    published: float = Field(..., description="Valeur publiée, en %")
    delta: float = Field(..., description="Écart en points de pourcentage")


class ReferenceReport(_Frozen):
    table: str
    strategy: Strategy
    banner: str
    rows: list[ReferenceRow] = Field(default_factory=list)
    missing: list[int] = Field(default_factory=list)
    shape_only: bool = False
    verdict: Verdict = Verdict.PARTIAL
    checks: list[str] = Field(default_factory=list)
