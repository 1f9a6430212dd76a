"""
Comparaison aux tables publiées — Coverage Lab.

Pour chaque nombre de nœuds : moyenne ± écart-type sur les graines,
valeur publiée et écart en points de pourcentage. Le verdict de la
Table 2 repose sur la forme de la courbe (monotonie, fenêtre à 50 nœuds,
saturation à 586) ; les colonnes de la Table 3 ne sont comparées qu'en
forme.
"""

from __future__ import annotations

import logging
from typing import Iterable

from coverage_lab.models import (
    ReferenceReport,
    ReferenceRow,
    Strategy,
    SweepResult,
    Verdict,
)
from coverage_lab.reference import (
    DERIVED_CONFIG_BANNER,
    HIGH_END_COUNT,
    HIGH_END_FLOOR,
    LOW_END_COUNT,
    LOW_END_WINDOW,
    MONOTONE_SLACK,
    ReferenceTable,
)
from coverage_lab.templates import render
from coverage_lab.utils.helpers import mean_std

logger = logging.getLogger("coverage_lab.reporter")


def is_monotone(means: list[float], slack: float = MONOTONE_SLACK) -> bool:
    """Chaque valeur est ≥ la précédente à `slack` près."""
    return all(b >= a - slack for a, b in zip(means, means[1:]))


def compare_to_reference(
    result: SweepResult, table: ReferenceTable, strategy: Strategy | None = None
) -> ReferenceReport:
    strategy = strategy or table.strategy
    rows: list[ReferenceRow] = []
    missing: list[int] = []
    for n, published in sorted(table.values.items()):
        coverages = result.coverages(strategy, n)
        if not coverages:
            missing.append(n)
            continue
        mean, std = mean_std(coverages)
        rows.append(ReferenceRow(
            n=n, mean=mean, std=std, seeds=len(coverages), published=published, delta=100.0 * mean - published,
        ))

    if missing:
        logger.warning(
            f"⚠️ Rapport partiel ({table.key}) : nombres de nœuds absents {missing}"
        )

    checks: list[tuple[str, bool]] = []
    means = {row.n: row.mean for row in rows}
    if len(rows) >= 2:
        checks.append((
            f"courbe croissante (tolérance {MONOTONE_SLACK})",
            is_monotone([row.mean for row in rows]),
        ))
    if not table.shape_only:
        if LOW_END_COUNT in means:
            lo, hi = LOW_END_WINDOW
            checks.append((
                f"n={LOW_END_COUNT} dans [{lo}, {hi}]", lo <= means[LOW_END_COUNT] <= hi,
            ))
        if HIGH_END_COUNT in means:
            checks.append((
                f"n={HIGH_END_COUNT} ≥ {HIGH_END_FLOOR}", means[HIGH_END_COUNT] >= HIGH_END_FLOOR,
            ))

    if any(not ok for _, ok in checks):
        verdict = Verdict.FAIL
    elif missing or not rows:
        verdict = Verdict.PARTIAL
    else:
        verdict = Verdict.PASS

    banner = DERIVED_CONFIG_BANNER
    if table.shape_only:
        banner += " Comparaison de forme uniquement (σ et terrain inconnus)."

    report = ReferenceReport(
        table=table.key,
        strategy=strategy,
        banner=banner,
        rows=rows,
        missing=missing,
        shape_only=table.shape_only,
        verdict=verdict,
        checks=[f"{'✅' if ok else '❌'} {label}" for label, ok in checks],
    )
    logger.info(f"📊 {table.key} / {strategy.value} : {verdict.value}")
    return report


def ordering_holds(
    result: SweepResult, upper: Strategy, lower: Strategy, counts: Iterable[int]
) -> bool:
    """Vrai si la couverture moyenne de `upper` est ≥ celle de `lower` pour chaque n présent."""
    upper_curve = result.mean_curve(upper)
    lower_curve = result.mean_curve(lower)
    shared = [n for n in counts if n in upper_curve and n in lower_curve]
    if not shared:
        return False
    return all(upper_curve[n] >= lower_curve[n] for n in shared)


def render_reference_report(report: ReferenceReport, title: str | None = None) -> str:
    """Rapport Markdown."""
    return render("reference_report.md.j2", report=report, title=title or report.table)
