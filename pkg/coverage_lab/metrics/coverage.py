"""
Métriques de couverture — Coverage Lab.

- Couverture union (estimateur grille déterministe) et somme naïve par nœud
- Compteur de couverture pour évaluer un déplacement de capteur
- Fitness totale pondérée par l'aire des sous-zones
- Couverture attendue d'un déploiement aléatoire : f = 1 − exp(−λπr²)
- Oracle Monte-Carlo et statistiques plus-proche-voisin (tests / uniformité)
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from coverage_lab.exceptions import DomainError, InconsistentPartitionError, PreconditionError
from coverage_lab.geometry.field import clipped_areas
from coverage_lab.models import CoverageReport, Deployment, Rect, SensorField

# Résolution par défaut : r_s / DEFAULT_RESOLUTION_DIVISOR
DEFAULT_RESOLUTION_DIVISOR = 10
MAX_RESOLUTION_DIVISOR = 5


@dataclass
class CoverageGrid:
    """Masque booléen sur les centres de cellules d'un rectangle."""
    region: Rect
    cell_size: float
    nx: int
    ny: int
    covered: np.ndarray = field(repr=False)

    @classmethod
    def for_region(cls, region: Rect, cell_size: float) -> CoverageGrid:
        if cell_size <= 0:
            raise PreconditionError(f"cell_size doit être > 0 (reçu {cell_size})")
        nx = max(1, math.ceil(region.width / cell_size))
        ny = max(1, math.ceil(region.height / cell_size))
        return cls(region=region, cell_size=cell_size, nx=nx, ny=ny,
                   covered=np.zeros((ny, nx), dtype=bool))

    # Pas effectif : la grille pave exactement la région
    @property
    def pitch_x(self) -> float:
        return self.region.width / self.nx

    @property
    def pitch_y(self) -> float:
        return self.region.height / self.ny

    @cached_property
    def xs(self) -> np.ndarray:
        return self.region.x0 + (np.arange(self.nx) + 0.5) * self.pitch_x

    @cached_property
    def ys(self) -> np.ndarray:
        return self.region.y0 + (np.arange(self.ny) + 0.5) * self.pitch_y

    def reset(self) -> None:
        self.covered[:] = False

    def disk_window(
        self, x: float, y: float, r: float
    ) -> tuple[slice, slice, np.ndarray] | None:
        """Fenêtre (lignes, colonnes) entourant le disque et masque des centres à distance ≤ r."""
        x0, y0 = self.region.x0, self.region.y0
        px, py = self.pitch_x, self.pitch_y
        i0 = max(0, math.floor((x - r - x0) / px - 0.5))
        i1 = min(self.nx, math.ceil((x + r - x0) / px - 0.5) + 1)
        j0 = max(0, math.floor((y - r - y0) / py - 0.5))
        j1 = min(self.ny, math.ceil((y + r - y0) / py - 0.5) + 1)
        if i0 >= i1 or j0 >= j1:
            return None
        dx = self.xs[i0:i1] - x
        dy = self.ys[j0:j1] - y
        return slice(j0, j1), slice(i0, i1), (dy[:, None] ** 2 + dx[None, :] ** 2) <= r * r

    def mark(self, positions: np.ndarray, radii: np.ndarray | float) -> None:
        """Marque les centres à distance ≤ r d'au moins un capteur."""
        positions = np.asarray(positions, dtype=float).reshape(-1, 2)
        radii = np.broadcast_to(np.asarray(radii, dtype=float), (len(positions),))
        for (x, y), r in zip(positions, radii):
            window = self.disk_window(x, y, r)
            if window is not None:
                rows, cols, inside = window
                self.covered[rows, cols] |= inside

    @property
    def fraction(self) -> float:
        return float(np.count_nonzero(self.covered)) / self.covered.size


class CoverageCounter:
    """
    Nombre de capteurs couvrant chaque centre de cellule.

    Même géométrie que CoverageGrid ; permet d'évaluer le gain net d'un
    déplacement sans recalculer toute l'union.
    """

    def __init__(self, region: Rect, cell_size: float):
        self.grid = CoverageGrid.for_region(region, cell_size)
        self.counts = np.zeros((self.grid.ny, self.grid.nx), dtype=np.int32)

    @classmethod
    def for_deployment(cls, dep: Deployment, resolution: float | None = None) -> CoverageCounter:
        """Compteur sur le terrain, au pas par défaut de union_coverage."""
        if not dep.sensors:
            raise PreconditionError("compteur de couverture : déploiement vide")
        radii = dep.radii
        resolution = resolution or float(radii.min()) / DEFAULT_RESOLUTION_DIVISOR
        counter = cls(dep.field.rect, resolution)
        for (x, y), r in zip(dep.positions, radii):
            counter.add(x, y, r)
        return counter

    def add(self, x: float, y: float, r: float, weight: int = 1) -> None:
        window = self.grid.disk_window(x, y, r)
        if window is not None:
            rows, cols, inside = window
            self.counts[rows, cols] += weight * inside

    def _uncovered_in(self, x: float, y: float, r: float) -> int:
        window = self.grid.disk_window(x, y, r)
        if window is None:
            return 0
        rows, cols, inside = window
        return int(np.count_nonzero(inside & (self.counts[rows, cols] == 0)))

    def move_gain(self, old: tuple[float, float], new: tuple[float, float], r: float) -> int:
        """Cellules gagnées moins cellules perdues si le disque passe de old à new."""
        self.add(*old, r, weight=-1)
        gain = self._uncovered_in(*new, r) - self._uncovered_in(*old, r)
        self.add(*old, r)
        return gain

    def move(self, old: tuple[float, float], new: tuple[float, float], r: float) -> None:
        self.add(*old, r, weight=-1)
        self.add(*new, r)

    @property
    def fraction(self) -> float:
        return float(np.count_nonzero(self.counts)) / self.counts.size


def check_resolution(resolution: float, r_s: float) -> None:
    if resolution > r_s / MAX_RESOLUTION_DIVISOR * (1 + 1e-12):
        raise PreconditionError(
            f"résolution {resolution} trop grossière pour r_s={r_s} (max r_s/{MAX_RESOLUTION_DIVISOR})"
        )


# ════════════════════════════════════════════
#  Couverture union / somme naïve
# ════════════════════════════════════════════

def union_coverage(
    dep: Deployment,
    resolution: float | None = None,
    region: Rect | None = None,
) -> CoverageReport:
    """
    Couverture d'un déploiement sur le terrain (ou une sous-région).

    union_fraction : centres de la grille couverts / total (le recouvrement
    ne compte qu'une fois). naive_sum_fraction : Σ aires découpées / aire.
    """
    if not dep.sensors:
        return CoverageReport(union_fraction=0.0, naive_sum_fraction=0.0, overlap_excess=0.0)

    radii = dep.radii
    r_min = float(radii.min())
    resolution = resolution if resolution is not None else r_min / DEFAULT_RESOLUTION_DIVISOR
    check_resolution(resolution, r_min)

    region = region or dep.field.rect
    positions = dep.positions
    grid = CoverageGrid.for_region(region, resolution)
    grid.mark(positions, radii)

    union = grid.fraction
    naive = float(clipped_areas(positions, radii, region).sum()) / region.area
    return CoverageReport(
        union_fraction=union,
        naive_sum_fraction=naive,
        overlap_excess=naive - union,
    )


# ════════════════════════════════════════════
#  Formules analytiques
# ════════════════════════════════════════════

def expected_random_coverage(lambda_density: float, r_s: float) -> float:
    """Probabilité de couverture d'un point sous déploiement poissonien : 1 − exp(−λπr²)."""
    if lambda_density < 0 or r_s < 0:
        raise DomainError(f"λ={lambda_density} et r_s={r_s} doivent être ≥ 0")
    return 1.0 - math.exp(-lambda_density * math.pi * r_s * r_s)


def total_fitness(per_subarea: Sequence[tuple[float, float]], field: SensorField) -> float:
    """Couverture du terrain entier : Σ GC_i · aire_i / aire du terrain."""
    areas = sum(area for _, area in per_subarea)
    if not math.isclose(areas, field.area, rel_tol=1e-6):
        raise InconsistentPartitionError(
            f"les sous-zones couvrent {areas:.6g} au lieu de {field.area:.6g}"
        )
    return sum(gc * area for gc, area in per_subarea) / field.area


# ════════════════════════════════════════════
#  Oracles et uniformité
# ════════════════════════════════════════════

def monte_carlo_coverage(
    dep: Deployment,
    samples: int = 1_000_000,
    seed: int = 0,
    region: Rect | None = None,
    chunk: int = 1 << 18,
) -> float:
    """Estimation Monte-Carlo (test du capteur le plus proche, rayons identiques)."""
    if not dep.sensors:
        return 0.0
    region = region or dep.field.rect
    tree = cKDTree(dep.positions)
    radii = dep.radii
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        pts = np.column_stack([
            rng.uniform(region.x0, region.x1, size),
            rng.uniform(region.y0, region.y1, size),
        ])
        dist, idx = tree.query(pts, k=1)
        hits += int(np.count_nonzero(dist <= radii[idx]))
        remaining -= size
    return hits / samples


def nearest_neighbor_stats(dep: Deployment) -> tuple[float, float]:
    """Moyenne et écart-type des distances au plus proche voisin."""
    if len(dep) < 2:
        return 0.0, 0.0
    dist, _ = cKDTree(dep.positions).query(dep.positions, k=2)
    nn = dist[:, 1]
    return float(nn.mean()), float(nn.std())
