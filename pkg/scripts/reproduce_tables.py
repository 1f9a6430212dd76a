#!/usr/bin/env python3
"""
🧪 Reproduction des courbes publiées — Coverage Lab.

Enchaîne balayage → comparaison → graphique pour la Table 2 (GA seul) et
la Table 3 (GA vs gaussien), puis vérifie l'ordre GA ≥ gaussien.

Usage :
  python scripts/reproduce_tables.py                  # réduit (3 graines)
  python scripts/reproduce_tables.py --full --jobs 8  # 10 graines
  python scripts/reproduce_tables.py --table table3
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
from rich.console import Console
from rich.panel import Panel

# Ajouter le projet au path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from coverage_lab.config import PROJECT_ROOT, load_experiment_config
from coverage_lab.models import Strategy
from coverage_lab.orchestrator import run_sweep
from coverage_lab.reference import ORDERING_COUNTS, TABLE2, TABLE3_GAUSSIAN, TABLE3_PROPOSED
from coverage_lab.reporting import compare_to_reference, emit_plot, ordering_holds, render_reference_report
from coverage_lab.utils.logger import setup_logging

console = Console()

QUICK_SEEDS = [1, 2, 3]


@click.command()
@click.option("--table", type=click.Choice(["table2", "table3", "all"]), default="all")
@click.option("--full", is_flag=True, help="10 graines au lieu de 3")
@click.option("--jobs", type=click.IntRange(min=1), default=None)
@click.option("--out", type=click.Path(path_type=Path), default=PROJECT_ROOT / "results")
def main(table: str, full: bool, jobs: int | None, out: Path) -> None:
    """Rejoue les balayages des tables publiées et écrit les rapports."""
    setup_logging()
    if table in ("table2", "all"):
        _table2(full, jobs, out)
    if table in ("table3", "all"):
        _table3(full, jobs, out)


def _load(name: str, full: bool, out: Path):
    config = load_experiment_config(PROJECT_ROOT / "configs" / f"{name}.json")
    update = {"output": config.output.model_copy(update={"dir": out / name})}
    if not full:
        update["seeds"] = QUICK_SEEDS
    return config.model_copy(update=update)


def _table2(full: bool, jobs: int | None, out: Path) -> None:
    config = _load("table2", full, out)
    console.print(Panel("Table 2 — GA par sous-zones", title="🧬"))
    result = run_sweep(config, jobs=jobs)
    report = compare_to_reference(result, TABLE2)
    emit_plot(result, config.output.plot_path, TABLE2)
    (config.output.dir / "table2.md").write_text(render_reference_report(report), encoding="utf-8")
    console.print(f"Verdict Table 2 : [bold]{report.verdict.value}[/]")


def _table3(full: bool, jobs: int | None, out: Path) -> None:
    config = _load("table3", full, out)
    console.print(Panel("Table 3 — GA vs protocole gaussien", title="📊"))
    result = run_sweep(config, jobs=jobs)
    for reference in (TABLE3_GAUSSIAN, TABLE3_PROPOSED):
        report = compare_to_reference(result, reference)
        (config.output.dir / f"{reference.key}.md").write_text(
            render_reference_report(report), encoding="utf-8"
        )
    emit_plot(result, config.output.plot_path, [TABLE3_GAUSSIAN, TABLE3_PROPOSED])
    ordered = ordering_holds(result, Strategy.GA, Strategy.GAUSSIAN, ORDERING_COUNTS)
    color = "green" if ordered else "red"
    console.print(f"GA ≥ gaussien pour n ∈ {list(ORDERING_COUNTS)} : [bold {color}]{ordered}[/]")


if __name__ == "__main__":
    main()
