"""Tests des rapports : CSV, SVG et comparaison aux tables publiées."""

import logging
import xml.etree.ElementTree as ET

import pytest

from coverage_lab.exceptions import ConfigError, OutputError, PreconditionError
from coverage_lab.models import (
    Deployment,
    Point,
    Sensor,
    Strategy,
    SweepResult,
    SweepRow,
    Verdict,
)
from coverage_lab.reference import REFERENCE_TABLES, TABLE2, TABLE3_GAUSSIAN, TABLE3_PROPOSED, get_table
from coverage_lab.reporting import (
    compare_to_reference,
    deployment_snapshot,
    emit_csv,
    emit_plot,
    load_csv,
    ordering_holds,
    render_reference_report,
)
from coverage_lab.reporting.writers import CSV_HEADER

SVG = "{http://www.w3.org/2000/svg}"


def _row(strategy: Strategy, n: int, seed: int, coverage: float) -> SweepRow:
    return SweepRow(strategy=strategy, n=n, seed=seed, coverage=coverage)


def _perfect_table2() -> SweepResult:
    return SweepResult(rows=[_row(Strategy.GA, n, 1, v / 100.0) for n, v in TABLE2.values.items()])


def _svg_root(path):
    return ET.parse(path).getroot()


class TestCsv:
    """Tests pour emit_csv() / load_csv()."""

    def test_empty_result_is_header_only(self, tmp_path):
        path = emit_csv(SweepResult(), tmp_path / "out.csv")

        assert path.read_text().splitlines() == [",".join(CSV_HEADER)]

    def test_one_row(self, tmp_path):
        result = SweepResult(rows=[_row(Strategy.UNIFORM, 50, 1, 0.3)])
        lines = emit_csv(result, tmp_path / "out.csv").read_text().splitlines()

        assert len(lines) == 2
        assert lines[1] == "uniform,50,1,0.3,0,0.0"

    def test_rows_sorted_and_reloaded(self, tmp_path):
        rows = [
            _row(Strategy.UNIFORM, 100, 2, 0.5),
            _row(Strategy.GA, 100, 1, 0.6),
            _row(Strategy.UNIFORM, 50, 1, 0.3),
        ]
        path = emit_csv(SweepResult(rows=rows), tmp_path / "out.csv")
        loaded = load_csv(path)

        assert [r.sort_key for r in loaded.rows] == [
            ("ga", 100, 1), ("uniform", 50, 1), ("uniform", 100, 2),
        ]
        assert loaded.rows[0].coverage == 0.6

    def test_byte_identical(self, tmp_path):
        result = SweepResult(rows=[_row(Strategy.GAUSSIAN, 200, 3, 0.123456789)])
        a = emit_csv(result, tmp_path / "a.csv").read_bytes()
        b = emit_csv(result, tmp_path / "b.csv").read_bytes()

        assert a == b

    def test_missing_csv(self, tmp_path):
        with pytest.raises(ConfigError):
            load_csv(tmp_path / "absent.csv")

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ConfigError):
            load_csv(path)

    def test_directory_target_rejected(self, tmp_path):
        with pytest.raises(OutputError):
            emit_csv(SweepResult(), tmp_path)


class TestPlot:
    """Tests pour emit_plot()."""

    def test_single_point_single_marker(self, tmp_path):
        result = SweepResult(rows=[_row(Strategy.UNIFORM, 50, 1, 0.3)])
        root = _svg_root(emit_plot(result, tmp_path / "plot.svg"))

        markers = root.findall(f".//{SVG}circle[@class='marker']")
        assert len(markers) == 1

    def test_one_polyline_per_strategy(self, tmp_path):
        result = SweepResult(rows=[
            _row(Strategy.UNIFORM, 50, 1, 0.3),
            _row(Strategy.UNIFORM, 100, 1, 0.5),
            _row(Strategy.GA, 50, 1, 0.35),
            _row(Strategy.GA, 100, 1, 0.55),
        ])
        root = _svg_root(emit_plot(result, tmp_path / "plot.svg"))

        assert len(root.findall(f".//{SVG}polyline")) == 2
        assert len(root.findall(f".//{SVG}g[@class='series']")) == 2

    def test_reference_marks(self, tmp_path):
        root = _svg_root(emit_plot(_perfect_table2(), tmp_path / "plot.svg", reference=TABLE2))
        group = root.find(f".//{SVG}g[@class='reference']")

        assert group is not None
        assert len(group.findall(f"{SVG}rect")) == len(TABLE2.printed)

    def test_empty_result_rejected(self, tmp_path):
        with pytest.raises(PreconditionError):
            emit_plot(SweepResult(), tmp_path / "plot.svg")


class TestSnapshot:
    """Tests pour deployment_snapshot()."""

    def test_empty_deployment(self, field_100, tmp_path):
        root = _svg_root(deployment_snapshot(Deployment(sensors=[], field=field_100), tmp_path / "d.svg"))

        assert root.findall(f".//{SVG}circle") == []
        assert root.find(f".//{SVG}rect[@class='field']") is not None

    def test_one_sensor_one_disk(self, field_100, tmp_path):
        dep = Deployment(sensors=[Sensor(id=1, pos=Point(x=10, y=20), r_s=5.0)], field=field_100)
        root = _svg_root(deployment_snapshot(dep, tmp_path / "d.svg"))

        circles = root.findall(f".//{SVG}circle[@class='sensor']")
        assert len(circles) == 1
        assert circles[0].get("data-id") == "1"


class TestReferenceTables:
    """Les valeurs publiées sont conservées telles qu'imprimées."""

    def test_table2_literals(self):
        assert TABLE2.printed[50] == "30.9371"
        assert TABLE2.printed[500] == "93.95"
        assert TABLE2.printed[586] == "99.99"
        assert TABLE2.node_counts == [50, 100, 150, 200, 250, 300, 400, 500, 550, 586]

    def test_table3_columns(self):
        assert TABLE3_GAUSSIAN.values[100] == 35.0
        assert TABLE3_GAUSSIAN.values[1000] == 99.99
        assert TABLE3_PROPOSED.printed[300] == TABLE2.printed[300]
        assert TABLE3_GAUSSIAN.shape_only and TABLE3_PROPOSED.shape_only

    def test_registry(self):
        assert get_table("table2") is TABLE2
        assert set(REFERENCE_TABLES) == {"table2", "table3-gaussian", "table3-ga"}
        with pytest.raises(KeyError):
            get_table("table9")


class TestCompareToReference:
    """Tests pour compare_to_reference()."""

    def test_perfect_match(self):
        report = compare_to_reference(_perfect_table2(), TABLE2)

        assert report.verdict == Verdict.PASS
        assert len(report.rows) == len(TABLE2.printed)
        assert all(row.delta == pytest.approx(0.0, abs=1e-9) for row in report.rows)
        assert report.missing == []

    def test_missing_counts_partial(self, caplog):
        result = SweepResult(rows=[
            _row(Strategy.GA, 50, 1, 0.30),
            _row(Strategy.GA, 100, 1, 0.44),
        ])
        with caplog.at_level(logging.WARNING, logger="coverage_lab.reporter"):
            report = compare_to_reference(result, TABLE2)

        assert report.verdict == Verdict.PARTIAL
        assert 586 in report.missing
        assert any("partiel" in r.getMessage() for r in caplog.records)

    def test_low_end_out_of_window_fails(self):
        result = SweepResult(rows=[_row(Strategy.GA, 50, 1, 0.5)])
        report = compare_to_reference(result, TABLE2)

        assert report.verdict == Verdict.FAIL

    def test_decreasing_curve_fails(self):
        result = SweepResult(rows=[
            _row(Strategy.GAUSSIAN, 100, 1, 0.6),
            _row(Strategy.GAUSSIAN, 200, 1, 0.4),
        ])
        report = compare_to_reference(result, TABLE3_GAUSSIAN)

        assert report.verdict == Verdict.FAIL
        assert report.shape_only

    def test_mean_and_std_over_seeds(self):
        result = SweepResult(rows=[_row(Strategy.GA, 50, s, c) for s, c in ((1, 0.30), (2, 0.32))])
        row = compare_to_reference(result, TABLE2).rows[0]

        assert row.seeds == 2
        assert row.mean == pytest.approx(0.31)
        assert row.delta == pytest.approx(31.0 - 30.9371)

    def test_markdown(self):
        report = compare_to_reference(_perfect_table2(), TABLE2)
        text = render_reference_report(report, title="Table 2")

        assert "Table 2" in text
        assert "PASS" in text
        assert "| 586 |" in text
        assert report.banner in text


class TestOrdering:
    """Tests pour ordering_holds()."""

    def test_upper_above_lower(self):
        result = SweepResult(rows=[
            _row(Strategy.GA, 100, 1, 0.45),
            _row(Strategy.GAUSSIAN, 100, 1, 0.35),
        ])

        assert ordering_holds(result, Strategy.GA, Strategy.GAUSSIAN, [100])
        assert not ordering_holds(result, Strategy.GAUSSIAN, Strategy.GA, [100])

    def test_no_shared_counts(self):
        result = SweepResult(rows=[_row(Strategy.GA, 100, 1, 0.45)])

        assert not ordering_holds(result, Strategy.GA, Strategy.GAUSSIAN, [100])
