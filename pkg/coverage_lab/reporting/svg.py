"""
Graphiques SVG autonomes — Coverage Lab.

- Courbe couverture (%) vs nombre de nœuds, une polyligne par stratégie
  (moyenne sur les graines), points de référence publiés en option
- Instantané d'un déploiement : terrain, un disque de rayon r_s par
  capteur, lignes de sous-zones en option

La géométrie est calculée ici ; les gabarits jinja2 ne font que la mise
en page.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Iterable

from coverage_lab.exceptions import OutputError, PreconditionError
from coverage_lab.models import Deployment, Strategy, SubareaGrid, SweepResult
from coverage_lab.reference import ReferenceTable
from coverage_lab.reporting.writers import ensure_writable
from coverage_lab.templates import render

logger = logging.getLogger("coverage_lab.svg")

CHART_WIDTH = 720
CHART_HEIGHT = 440
MARGIN = {"left": 64, "right": 150, "top": 40, "bottom": 56}
SNAPSHOT_SIZE = 600
SNAPSHOT_PAD = 20

COLORS = {
    Strategy.GA: "#0d6efd",
    Strategy.GAUSSIAN: "#dc3545",
    Strategy.UNIFORM: "#6c757d",
    Strategy.BIDDING: "#198754",
    Strategy.DSS: "#fd7e14",
}
REFERENCE_COLOR = "#212529"


def _nice_ticks(lo: float, hi: float, max_ticks: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1
    raw = (hi - lo) / max(max_ticks - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = mag * min((1, 2, 2.5, 5, 10), key=lambda k: abs(k * mag - raw))
    ticks = []
    v = math.floor(lo / step) * step
    while v <= hi + step * 0.01:
        if v >= lo - step * 0.01:
            ticks.append(round(v, 10))
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _write(path: Path, svg: str) -> Path:
    path = ensure_writable(Path(path))
    try:
        path.write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise OutputError(path, str(exc)) from exc
    return path


# ════════════════════════════════════════════
#  Courbes de couverture
# ════════════════════════════════════════════

def plot_series(result: SweepResult) -> dict[Strategy, list[tuple[int, float]]]:
    """Points tracés : (n, couverture moyenne en fraction), par stratégie."""
    return {s: sorted(result.mean_curve(s).items()) for s in result.strategies()}


def emit_plot(
    result: SweepResult,
    path: str | Path,
    reference: ReferenceTable | Iterable[ReferenceTable] | None = None,
) -> Path:
    """Écrit le graphique SVG couverture vs n et retourne le chemin."""
    series = plot_series(result)
    if not series:
        raise PreconditionError("emit_plot : au moins une stratégie requise")
    if isinstance(reference, ReferenceTable):
        references = [reference]
    else:
        references = list(reference or [])

    xs = [n for points in series.values() for n, _ in points]
    xs += [n for table in references for n in table.node_counts]
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    x_ticks = _nice_ticks(x_lo, x_hi)
    x_lo, x_hi = min(x_lo, x_ticks[0]), max(x_hi, x_ticks[-1])

    plot_w = CHART_WIDTH - MARGIN["left"] - MARGIN["right"]
    plot_h = CHART_HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(n: float) -> float:
        return MARGIN["left"] + (n - x_lo) / (x_hi - x_lo) * plot_w

    def sy(percent: float) -> float:
        return MARGIN["top"] + (1.0 - percent / 100.0) * plot_h

    lines = []
    for strategy, points in series.items():
        coords = [(sx(n), sy(100.0 * c)) for n, c in points]
        lines.append({
            "label": strategy.value,
            "color": COLORS[strategy],
            "points": " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in coords),
            "markers": [{"x": _fmt(x), "y": _fmt(y)} for x, y in coords],
        })

    marks = []
    for table in references:
        marks.append({
            "label": f"{table.key} (publié)",
            "points": [
                {"x": _fmt(sx(n) - 4), "y": _fmt(sy(v) - 4)} for n, v in sorted(table.values.items())
            ],
        })

    svg = render(
        "coverage_chart.svg.j2",
        width=CHART_WIDTH,
        height=CHART_HEIGHT,
        margin=MARGIN,
        plot_w=plot_w,
        plot_h=plot_h,
        title="Couverture vs nombre de nœuds",
        x_ticks=[{"pos": _fmt(sx(t)), "label": f"{t:g}"} for t in x_ticks],
        y_ticks=[{"pos": _fmt(sy(t)), "label": f"{t:g}"} for t in range(0, 101, 20)],
        lines=lines,
        references=marks,
        reference_color=REFERENCE_COLOR,
    )
    path = _write(Path(path), svg)
    logger.info(f"📈 Graphique écrit : {path} ({len(lines)} série(s))")
    return path


# ════════════════════════════════════════════
#  Instantané de déploiement
# ════════════════════════════════════════════

def deployment_snapshot(
    dep: Deployment, path: str | Path, grid: SubareaGrid | None = None
) -> Path:
    """Dessine le terrain et les disques de détection à l'échelle."""
    field = dep.field
    scale = (SNAPSHOT_SIZE - 2 * SNAPSHOT_PAD) / max(field.width, field.height)
    width = field.width * scale + 2 * SNAPSHOT_PAD
    height = field.height * scale + 2 * SNAPSHOT_PAD

    def sx(x: float) -> float:
        return SNAPSHOT_PAD + x * scale

    def sy(y: float) -> float:
        return SNAPSHOT_PAD + (field.height - y) * scale

    circles = [
        {"id": s.id, "cx": _fmt(sx(s.pos.x)), "cy": _fmt(sy(s.pos.y)), "r": _fmt(s.r_s * scale)}
        for s in dep.sensors
    ]
    dividers = []
    if grid is not None:
        for cell in grid.cells:
            dividers.append({
                "x": _fmt(sx(cell.x0)),
                "y": _fmt(sy(cell.y1)),
                "w": _fmt(cell.width * scale),
                "h": _fmt(cell.height * scale),
            })

    svg = render(
        "deployment.svg.j2",
        width=_fmt(width),
        height=_fmt(height),
        field={
            "x": _fmt(sx(0.0)),
            "y": _fmt(sy(field.height)),
            "w": _fmt(field.width * scale),
            "h": _fmt(field.height * scale),
        },
        base_station={"x": _fmt(sx(field.base_station.x)), "y": _fmt(sy(field.base_station.y))},
        circles=circles,
        subareas=dividers,
        title=f"Déploiement — {len(dep)} capteur(s)",
    )
    path = _write(Path(path), svg)
    logger.info(f"🗺️ Instantané écrit : {path}")
    return path
