"""
Géométrie du terrain — Coverage Lab.

- Construction validée du terrain
- Partition du terrain en sous-zones (grille quasi carrée, quotas équilibrés)
- Aire exacte disque ∩ rectangle (décomposition en segments circulaires)
- Test d'appartenance à bornes fermées
"""

from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np
from pydantic import ValidationError

from coverage_lab.exceptions import InvalidFieldError, PreconditionError
from coverage_lab.models import Point, Rect, Sensor, SensorField, SubareaGrid


# ════════════════════════════════════════════
#  Terrain
# ════════════════════════════════════════════

def make_field(width: float, height: float, base_station: Point | None = None) -> SensorField:
    """Construit un terrain ; dimensions nulles ou station hors terrain → InvalidFieldError."""
    try:
        return SensorField(width=width, height=height, base_station=base_station)
    except ValidationError as exc:
        raise InvalidFieldError(f"terrain invalide {width}×{height} : {exc.errors()[0]['msg']}") from exc


# ════════════════════════════════════════════
#  Partition
# ════════════════════════════════════════════

def partition(field: SensorField, n_nodes: int, target_per_subarea: int) -> SubareaGrid:
    """
    Découpe le terrain en p = ceil(n / cible) rectangles égaux.

    La grille rows×cols vérifie rows·cols = p avec |rows − cols| minimal
    (rows ≤ cols). Les cellules sont numérotées ligne par ligne depuis
    l'origine ; les (n mod p) premières reçoivent un nœud de plus.
    """
    if n_nodes < 1 or target_per_subarea < 1:
        raise PreconditionError(
            f"partition : n_nodes={n_nodes} et target_per_subarea={target_per_subarea} doivent être ≥ 1"
        )

    p = math.ceil(n_nodes / target_per_subarea)
    rows, cols = _near_square(p)

    xs = np.linspace(0.0, field.width, cols + 1)
    ys = np.linspace(0.0, field.height, rows + 1)
    cells = [
        Rect(x0=float(xs[c]), y0=float(ys[r]), x1=float(xs[c + 1]), y1=float(ys[r + 1]))
        for r in range(rows)
        for c in range(cols)
    ]

    base, extra = divmod(n_nodes, p)
    quota = [base + (1 if i < extra else 0) for i in range(p)]
    return SubareaGrid(rows=rows, cols=cols, cells=cells, node_quota=quota)


def _near_square(p: int) -> tuple[int, int]:
    rows = max(d for d in range(1, math.isqrt(p) + 1) if p % d == 0)
    return rows, p // rows


# ════════════════════════════════════════════
#  Aire disque ∩ rectangle
# ════════════════════════════════════════════

def disk_field_area(sensor: Sensor, rect: Rect | SensorField) -> float:
    """Aire exacte du disque de détection découpé par le rectangle (0 si disjoints)."""
    if isinstance(rect, SensorField):
        rect = rect.rect
    return disk_rect_area(sensor.pos.x, sensor.pos.y, sensor.r_s, rect)


def disk_rect_area(cx: float, cy: float, r: float, rect: Rect) -> float:
    # Repère centré sur le disque : on intègre la corde verticale clippée
    a = max(rect.x0 - cx, -r)
    b = min(rect.x1 - cx, r)
    lo = rect.y0 - cy
    hi = rect.y1 - cy
    if a >= b or lo >= hi or lo >= r or hi <= -r:
        return 0.0
    if a == -r and b == r and lo <= -r and hi >= r:
        return math.pi * r * r

    breaks = {a, b}
    for t in (lo, hi):
        if abs(t) < r:
            u = math.sqrt(r * r - t * t)
            breaks.update(s for s in (-u, u) if a < s < b)
    pts = sorted(breaks)

    total = 0.0
    for u0, u1 in zip(pts, pts[1:]):
        length = u1 - u0
        if length <= 0.0:
            continue
        um = 0.5 * (u0 + u1)
        hm = math.sqrt(max(r * r - um * um, 0.0))
        top_is_arc = hm <= hi
        bottom_is_arc = -hm >= lo
        top_mid = hm if top_is_arc else hi
        bottom_mid = -hm if bottom_is_arc else lo
        if top_mid <= bottom_mid:
            continue
        arc = _half_chord_integral(u1, r) - _half_chord_integral(u0, r)
        top = arc if top_is_arc else hi * length
        bottom = -arc if bottom_is_arc else lo * length
        total += top - bottom
    return total


def _half_chord_integral(u: float, r: float) -> float:
    """Primitive de sqrt(r² − u²)."""
    s = min(max(u / r, -1.0), 1.0)
    return 0.5 * (u * math.sqrt(max(r * r - u * u, 0.0)) + r * r * math.asin(s))


def clipped_areas(positions: np.ndarray, radii: Iterable[float], rect: Rect) -> np.ndarray:
    """disk_rect_area pour chaque ligne de positions (n, 2)."""
    return np.array(
        [disk_rect_area(float(x), float(y), float(r), rect) for (x, y), r in zip(positions, radii)],
        dtype=float,
    )


# ════════════════════════════════════════════
#  Appartenance
# ════════════════════════════════════════════

def contains(region: Rect | SensorField, p: Point) -> bool:
    """Vrai ssi p est dans le rectangle fermé (les arêtes partagées appartiennent aux deux cellules)."""
    rect = region.rect if isinstance(region, SensorField) else region
    return rect.contains(p)
