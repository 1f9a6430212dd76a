"""
Point d'entrée CLI — Coverage Lab.

Sous-commandes :
  - deploy    : déploiement aléatoire (uniforme ou gaussien)
  - optimize  : algorithme génétique par sous-zones
  - baseline  : méthode de comparaison (enchères Voronoï, DSS, ...)
  - sweep     : balayage stratégies × n × graines → CSV (+ SVG)
  - report    : comparaison d'un CSV aux tables publiées
  - plot      : graphique SVG à partir d'un CSV
  - saturation: plus petit n saturant le terrain (GA)

Codes de sortie : 0 succès, 2 erreur de configuration, 1 erreur d'exécution.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import click
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from coverage_lab.config import default_experiment_config, get_settings, load_experiment_config
from coverage_lab.exceptions import ConfigError, CoverageLabError
from coverage_lab.geometry.field import partition
from coverage_lab.metrics.coverage import union_coverage
from coverage_lab.models import Deployment, ExperimentConfig, Strategy, SweepResult, Verdict
from coverage_lab.orchestrator import build_strategy, run_sweep
from coverage_lab.reference import REFERENCE_TABLES, get_table
from coverage_lab.reporting import (
    compare_to_reference,
    deployment_snapshot,
    emit_plot,
    load_csv,
    render_reference_report,
)
from coverage_lab.strategies.genetic import find_saturation_point, optimize_field
from coverage_lab.utils.helpers import percentage
from coverage_lab.utils.logger import setup_logging

console = Console()

EXIT_RUNTIME = 1
EXIT_CONFIG = 2


@dataclass
class CliState:
    config: ExperimentConfig
    seed: int
    seed_given: bool


@contextmanager
def _handle_errors() -> Iterator[None]:
    """Traduit les erreurs métier en codes de sortie."""
    try:
        yield
    except (ConfigError, ValidationError) as exc:
        console.print(Panel(f"[bold red]{exc}[/]", title="⚙️ Configuration invalide"))
        sys.exit(EXIT_CONFIG)
    except (CoverageLabError, OSError) as exc:
        console.print(Panel(f"[bold red]{exc}[/]", title="❌ Erreur"))
        sys.exit(EXIT_RUNTIME)


# ════════════════════════════════════════════
#  CLI
# ════════════════════════════════════════════

@click.group()
@click.option("--config", "config_path", type=click.Path(path_type=Path), help="Configuration JSON")
@click.option("--seed", type=int, default=None, help="Graine maître (défaut : COVERAGE_LAB_SEED)")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Dossier de sortie")
@click.option("--log-level", default=None, help="Niveau de log (DEBUG, INFO, ...)")
@click.pass_context
def main(
    ctx: click.Context,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    log_level: str | None,
) -> None:
    """🛰️ Coverage Lab — Optimisation de la couverture des réseaux de capteurs."""
    with _handle_errors():
        setup_logging(log_level)
        config = load_experiment_config(config_path) if config_path else default_experiment_config()
        if out is not None:
            config = config.model_copy(update={"output": config.output.model_copy(update={"dir": out})})
        if seed is not None and seed < 0:
            raise ConfigError(f"--seed doit être ≥ 0 (reçu {seed})")
        ctx.obj = CliState(
            config=config,
            seed=seed if seed is not None else get_settings().seed,
            seed_given=seed is not None,
        )


def _state(ctx: click.Context) -> CliState:
    return ctx.obj


def _snapshot_path(config: ExperimentConfig, stem: str) -> Path:
    return config.output.dir / f"{stem}.svg"


def _show_deployment(title: str, dep: Deployment, coverage: float, extra: str = "") -> None:
    console.print(Panel(
        f"[bold cyan]{len(dep)} capteur(s)[/] — couverture [bold]{percentage(coverage)}[/]{extra}",
        title=title,
    ))


# ── deploy ──────────────────────────────────

@main.command()
@click.option("--strategy", type=click.Choice(["uniform", "gaussian"]), default="uniform")
@click.option("-n", "--nodes", type=click.IntRange(min=0), required=True)
@click.option("--snapshot/--no-snapshot", default=True, help="Écrire un instantané SVG")
@click.pass_context
def deploy(ctx: click.Context, strategy: str, nodes: int, snapshot: bool) -> None:
    """Déploiement aléatoire de référence."""
    state = _state(ctx)
    with _handle_errors():
        kind = Strategy(strategy)
        outcome = build_strategy(kind, state.config).run(state.config.field, nodes, state.seed)
        coverage = union_coverage(outcome.deployment, state.config.effective_resolution).union_fraction
        _show_deployment(f"🎲 {kind.value}", outcome.deployment, coverage)
        if snapshot:
            path = deployment_snapshot(
                outcome.deployment,
                _snapshot_path(state.config, f"deploy_{kind.value}_n{nodes}_s{state.seed}"),
            )
            console.print(f"🗺️ {path}")


# ── optimize ────────────────────────────────

@main.command()
@click.option("-n", "--nodes", type=click.IntRange(min=1), required=True)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Processus (sous-zones)")
@click.option("--snapshot/--no-snapshot", default=True)
@click.pass_context
def optimize(ctx: click.Context, nodes: int, jobs: int | None, snapshot: bool) -> None:
    """Algorithme génétique par sous-zones."""
    state = _state(ctx)
    config = state.config
    with _handle_errors():
        deployment, report, histories = optimize_field(
            config.field,
            nodes,
            config.ga,
            state.seed,
            r_s=config.sensing_radius,
            resolution=config.effective_resolution,
            jobs=jobs or get_settings().jobs,
        )
        _show_deployment(
            "🧬 Algorithme génétique",
            deployment,
            report.union_fraction,
            f" — total pondéré {percentage(report.partition_total)}",
        )

        table = Table(title="Sous-zones")
        table.add_column("#", justify="right")
        table.add_column("GC_i", justify="right")
        table.add_column("Générations", justify="right")
        table.add_column("Arrêt")
        for sub, history in zip(report.per_subarea, histories):
            table.add_row(
                str(sub.index), percentage(sub.coverage), str(history.generations), history.termination.value
            )
        console.print(table)

        if snapshot:
            grid = partition(config.field, nodes, config.ga.target_per_subarea)
            path = deployment_snapshot(
                deployment, _snapshot_path(config, f"optimize_n{nodes}_s{state.seed}"), grid
            )
            console.print(f"🗺️ {path}")


# ── baseline ────────────────────────────────

@main.command()
@click.option(
    "--strategy",
    type=click.Choice([s.value for s in Strategy if s != Strategy.GA]),
    default=Strategy.BIDDING.value,
)
@click.option("-n", "--nodes", type=click.IntRange(min=1), required=True)
@click.option("--snapshot/--no-snapshot", default=True)
@click.pass_context
def baseline(ctx: click.Context, strategy: str, nodes: int, snapshot: bool) -> None:
    """Méthode de comparaison (enchères Voronoï, DSS, uniforme, gaussien)."""
    state = _state(ctx)
    with _handle_errors():
        kind = Strategy(strategy)
        outcome = build_strategy(kind, state.config).run(state.config.field, nodes, state.seed)
        coverage = union_coverage(outcome.deployment, state.config.effective_resolution).union_fraction
        _show_deployment(f"📐 {kind.value}", outcome.deployment, coverage, f" — {outcome.steps} étape(s)")
        if snapshot:
            path = deployment_snapshot(
                outcome.deployment,
                _snapshot_path(state.config, f"baseline_{kind.value}_n{nodes}_s{state.seed}"),
            )
            console.print(f"🗺️ {path}")


# ── sweep ───────────────────────────────────

@main.command()
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Cellules en parallèle")
@click.pass_context
def sweep(ctx: click.Context, jobs: int | None) -> None:
    """Balayage stratégies × nombres de nœuds × graines."""
    state = _state(ctx)
    config = state.config
    if state.seed_given:
        config = config.model_copy(update={"seeds": [state.seed]})
    with _handle_errors():
        console.print(Panel(
            f"[bold cyan]{', '.join(s.value for s in config.strategies)}[/]\n"
            f"n = {config.node_counts}\ngraines = {config.seeds}",
            title="🚀 Balayage",
        ))
        result = run_sweep(config, jobs=jobs)
        _display_means(result)
        console.print(f"📄 {config.output.csv_path}")
        if config.output.plot_path is not None:
            console.print(f"📈 {emit_plot(result, config.output.plot_path)}")


def _display_means(result: SweepResult) -> None:
    table = Table(title="📊 Couverture moyenne")
    table.add_column("Stratégie", style="cyan")
    table.add_column("n", justify="right")
    table.add_column("Moyenne", justify="right")
    for strategy in result.strategies():
        for n, mean in result.mean_curve(strategy).items():
            table.add_row(strategy.value, str(n), percentage(mean))
    console.print(table)


# ── report ──────────────────────────────────

@main.command()
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), required=True)
@click.option("--table", "table_key", type=click.Choice(list(REFERENCE_TABLES)), default="table2")
@click.option("--strategy", type=click.Choice([s.value for s in Strategy]), default=None)
@click.option("--markdown", type=click.Path(path_type=Path), default=None, help="Rapport Markdown")
@click.pass_context
def report(
    ctx: click.Context, csv_path: Path, table_key: str, strategy: str | None, markdown: Path | None
) -> None:
    """Compare un CSV de balayage à une table publiée."""
    with _handle_errors():
        result = load_csv(csv_path)
        table = get_table(table_key)
        rep = compare_to_reference(result, table, Strategy(strategy) if strategy else None)

        color = {Verdict.PASS: "green", Verdict.FAIL: "red", Verdict.PARTIAL: "yellow"}[rep.verdict]
        console.print(Panel(
            f"[bold {color}]{rep.verdict.value}[/] — {rep.strategy.value} vs {rep.table}\n\n{rep.banner}",
            title="⚖️ Comparaison",
            border_style=color,
        ))
        grid = Table()
        for column in ("n", "Moyenne", "σ", "Graines", "Publié", "Δ (pts)"):
            grid.add_column(column, justify="right")
        for row in rep.rows:
            grid.add_row(
                str(row.n), percentage(row.mean), percentage(row.std), str(row.seeds),
                f"{row.published:g}", f"{row.delta:+.2f}",
            )
        console.print(grid)
        for check in rep.checks:
            console.print(f"  • {check}")

        if markdown is not None:
            markdown.parent.mkdir(parents=True, exist_ok=True)
            markdown.write_text(render_reference_report(rep), encoding="utf-8")
            console.print(f"📝 {markdown}")


# ── plot ────────────────────────────────────

@main.command()
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), required=True)
@click.option("--reference", "reference_keys", multiple=True, type=click.Choice(list(REFERENCE_TABLES)))
@click.option("--output", type=click.Path(path_type=Path), default=None, help="Fichier SVG")
@click.pass_context
def plot(ctx: click.Context, csv_path: Path, reference_keys: tuple[str, ...], output: Path | None) -> None:
    """Graphique couverture vs n à partir d'un CSV."""
    state = _state(ctx)
    with _handle_errors():
        result = load_csv(csv_path)
        target = output or state.config.output.plot_path or state.config.output.dir / "sweep.svg"
        path = emit_plot(result, target, [get_table(k) for k in reference_keys])
        console.print(f"📈 {path}")


# ── saturation ──────────────────────────────

@main.command()
@click.option("--threshold", type=click.FloatRange(0.0, 1.0), default=0.999)
@click.option("--start", type=click.IntRange(min=1), default=10)
@click.option("--stop", type=click.IntRange(min=1), default=1000)
@click.option("--step", type=click.IntRange(min=1), default=10)
@click.option("--jobs", type=click.IntRange(min=1), default=None)
@click.pass_context
def saturation(
    ctx: click.Context, threshold: float, start: int, stop: int, step: int, jobs: int | None
) -> None:
    """Plus petit n dont la couverture GA moyenne atteint le seuil."""
    state = _state(ctx)
    config = state.config
    seeds = [state.seed] if state.seed_given else config.seeds
    with _handle_errors():
        n = find_saturation_point(
            config.field, seeds, config.ga,
            r_s=config.sensing_radius, resolution=config.effective_resolution,
            threshold=threshold, start=start, stop=stop, step=step,
            jobs=jobs or get_settings().jobs,
        )
        if n is None:
            console.print(f"[yellow]Seuil {percentage(threshold)} non atteint jusqu'à n={stop}[/]")
            sys.exit(EXIT_RUNTIME)
        console.print(Panel(f"[bold green]n = {n}[/] (seuil {percentage(threshold)})", title="🎯 Saturation"))


if __name__ == "__main__":
    main()
