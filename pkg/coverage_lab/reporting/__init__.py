"""Rapports — Coverage Lab (CSV, SVG, comparaison aux tables publiées)."""

from coverage_lab.reporting.reporter import compare_to_reference, ordering_holds, render_reference_report
from coverage_lab.reporting.svg import deployment_snapshot, emit_plot, plot_series
from coverage_lab.reporting.writers import emit_csv, load_csv

__all__ = [
    "compare_to_reference",
    "deployment_snapshot",
    "emit_csv",
    "emit_plot",
    "load_csv",
    "ordering_holds",
    "plot_series",
    "render_reference_report",
]
