"""
Diagramme de Voronoï borné — Coverage Lab.

Chaque cellule est obtenue en découpant le rectangle du terrain par les
demi-plans des médiatrices (site propriétaire vs autres sites), les
voisins étant visités du plus proche au plus lointain : dès que la
médiatrice est plus loin que le sommet le plus éloigné de la cellule
courante, aucun site restant ne peut la couper.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import shapely
from shapely.geometry import Polygon, box
from shapely.geometry.base import BaseGeometry
from shapely.geometry.polygon import orient

from coverage_lab.exceptions import DegenerateInputError, PreconditionError
from coverage_lab.models import Deployment, Point, Sensor, SensorField, VoronoiCell

logger = logging.getLogger("coverage_lab.voronoi")

DUPLICATE_JITTER = 1e-9
TIE_TOLERANCE = 1e-9
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def voronoi_cells(dep: Deployment) -> list[VoronoiCell]:
    """Une cellule bornée par capteur, dans l'ordre du déploiement."""
    if not dep.sensors:
        raise PreconditionError("voronoi_cells : au moins un capteur requis")
    return cells_for_sites(dep.sensors, dep.field)


def cells_for_sites(sensors: list[Sensor], field: SensorField) -> list[VoronoiCell]:
    """Cellules bornées pour une liste quelconque de capteurs (identifiants non contigus admis)."""
    positions = np.array([[s.pos.x, s.pos.y] for s in sensors], dtype=float).reshape(-1, 2)
    sites = separate_duplicates(positions, field)
    frame = box(0.0, 0.0, field.width, field.height)
    extent = 2.0 * math.hypot(field.width, field.height) + 1.0

    cells: list[VoronoiCell] = []
    for i, sensor in enumerate(sensors):
        owner = sites[i]
        distances = np.hypot(*(sites - owner).T)
        cell: BaseGeometry = frame
        for j in np.argsort(distances, kind="stable"):
            if j == i:
                continue
            if distances[j] / 2.0 >= _max_vertex_distance(cell, owner):
                break
            cell = cell.intersection(_half_plane(owner, sites[j], extent))
            if cell.is_empty:
                break
        cells.append(_to_cell(sensor.id, cell))
    return cells


def separate_duplicates(positions: np.ndarray, field: SensorField) -> np.ndarray:
    """Décale de façon déterministe (1e-9) les positions confondues."""
    sites = np.array(positions, dtype=float).reshape(-1, 2)
    seen: dict[tuple[float, float], int] = {}
    moved = 0
    for k, (x, y) in enumerate(sites):
        key = (float(x), float(y))
        count = seen.get(key, 0)
        seen[key] = count + 1
        if not count:
            continue
        angle = count * _GOLDEN_ANGLE
        dx = DUPLICATE_JITTER * count * math.cos(angle)
        dy = DUPLICATE_JITTER * count * math.sin(angle)
        nx = x + dx if 0.0 <= x + dx <= field.width else x - dx
        ny = y + dy if 0.0 <= y + dy <= field.height else y - dy
        sites[k] = (nx, ny)
        moved += 1
    if moved:
        logger.warning(f"{moved} position(s) dupliquée(s) décalée(s) de {DUPLICATE_JITTER:g}")
    if len({(float(x), float(y)) for x, y in sites}) < len(sites):
        raise DegenerateInputError("sites confondus malgré le décalage de départage")
    return sites


def _half_plane(owner: np.ndarray, other: np.ndarray, extent: float) -> Polygon:
    """Demi-plan des points plus proches de owner que de other."""
    normal = owner - other
    normal = normal / np.linalg.norm(normal)
    tangent = np.array([-normal[1], normal[0]])
    mid = (owner + other) / 2.0
    a = mid + extent * tangent
    b = mid - extent * tangent
    return Polygon([tuple(a), tuple(b), tuple(b + extent * normal), tuple(a + extent * normal)])


def _max_vertex_distance(cell: BaseGeometry, owner: np.ndarray) -> float:
    if cell.is_empty:
        return 0.0
    coords = shapely.get_coordinates(cell)
    return float(np.max(np.hypot(*(coords - owner).T)))


def _to_cell(owner_id: int, geometry: BaseGeometry) -> VoronoiCell:
    if geometry.is_empty:
        return VoronoiCell(owner=owner_id)
    if geometry.geom_type != "Polygon":
        polygons = [g for g in getattr(geometry, "geoms", []) if g.geom_type == "Polygon"]
        if not polygons:
            return VoronoiCell(owner=owner_id)
        geometry = max(polygons, key=lambda g: g.area)
    polygon = orient(geometry.simplify(0.0), sign=1.0)
    coords = list(polygon.exterior.coords)[:-1]
    return VoronoiCell(owner=owner_id, vertices=[Point(x=x, y=y) for x, y in coords])


def farthest_vertex(cell: VoronoiCell, owner: Sensor) -> tuple[Point, float]:
    """Sommet le plus éloigné du propriétaire ; égalités départagées par (x, puis y) minimal."""
    if not cell.vertices:
        raise PreconditionError(f"cellule dégénérée pour le capteur {owner.id}")
    distances = [owner.pos.distance_to(v) for v in cell.vertices]
    longest = max(distances)
    candidates = [v for v, d in zip(cell.vertices, distances) if d >= longest - TIE_TOLERANCE]
    vertex = min(candidates, key=lambda v: (v.x, v.y))
    return vertex, owner.pos.distance_to(vertex)
