"""
Écriture et relecture des résultats CSV — Coverage Lab.

Format : en-tête `strategy,n,seed,coverage,steps,wall_ms`, une ligne par
(stratégie, n, graine), triées dans cet ordre. Les couvertures sont
écrites avec repr() pour une relecture exacte.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import IO, Iterable

from pydantic import ValidationError

from coverage_lab.exceptions import ConfigError, OutputError
from coverage_lab.models import SweepResult, SweepRow

logger = logging.getLogger("coverage_lab.writers")

CSV_HEADER = ["strategy", "n", "seed", "coverage", "steps", "wall_ms"]


def row_fields(row: SweepRow) -> list[str]:
    return [
        row.strategy.value,
        str(row.n),
        str(row.seed),
        repr(float(row.coverage)),
        str(row.steps),
        repr(float(row.wall_ms)),
    ]


def write_rows(handle: IO[str], rows: Iterable[SweepRow], *, header: bool = True) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row_fields(row))


def ensure_writable(path: Path) -> Path:
    """Crée le dossier parent et vérifie qu'on peut y écrire, sans toucher au fichier."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(path, str(exc)) from exc
    if path.is_dir():
        raise OutputError(path, "est un dossier")
    marker = path.parent / f".{path.name}.marker"
    try:
        marker.write_text("")
        marker.unlink()
    except OSError as exc:
        raise OutputError(path, str(exc)) from exc
    return path


def emit_csv(result: SweepResult, path: str | Path) -> Path:
    """Écrit tout le résultat (lignes triées) et retourne le chemin."""
    path = ensure_writable(Path(path))
    try:
        with path.open("w", newline="", encoding="utf-8") as handle:
            write_rows(handle, result.sorted_rows())
    except OSError as exc:
        raise OutputError(path, str(exc)) from exc
    logger.info(f"📄 CSV écrit : {path} ({len(result.rows)} ligne(s))")
    return path


def load_csv(path: str | Path) -> SweepResult:
    """Relit un CSV produit par emit_csv."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"CSV introuvable : {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != CSV_HEADER:
            raise ConfigError(f"{path} : en-tête inattendu {reader.fieldnames}")
        try:
            rows = [SweepRow.model_validate(record) for record in reader]
        except ValidationError as exc:
            raise ConfigError(f"{path} : ligne invalide\n{exc}") from exc
    return SweepResult(rows=rows)
