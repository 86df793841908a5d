import csv
import io
import json
from fractions import Fraction

import pytest

from apsbench.enums.report import OutputFormat
from apsbench.schemas.reports import RunConfig
from apsbench.services.report_service import GAP_TABLE, ReportService, base_seeds, build_row, min_order_for


def test_table_one_rows():
    service = ReportService(RunConfig(command="table", table="I", k_range=(2, 3)))
    report = service.build_table("I")
    assert [row.k for row in report.rows] == [2, 3]
    assert report.rows[1].r_k == pytest.approx(0.894, abs=1e-3)
    assert report.regime == "degree only"


def test_csv_rendering_has_rounded_companions():
    service = ReportService(RunConfig(command="table", table="II", k_range=(3, 4), p=2))
    text = service.render(service.build_table("II"), OutputFormat.CSV)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["k", "p", "n", "m_k", "m_k_rounded", "m_hat_k", "m_hat_k_rounded"]
    assert rows[0]["n"] == "52"
    assert float(rows[0]["m_k"]) == pytest.approx(float(Fraction(23, 26)))
    assert rows[1]["m_hat_k_rounded"] == "0.982"


def test_json_rendering():
    service = ReportService(RunConfig(command="table", table="II", k_range=(4, 4), p=2))
    document = json.loads(service.render(service.build_table("II"), OutputFormat.JSON))
    assert document["table"] == "II"
    assert document["regime"] == "p=2"
    assert document["rows"][0]["n"] == 22


def test_out_path(tmp_path):
    target = tmp_path / "table.csv"
    service = ReportService(RunConfig(command="table", table="I", k_range=(4, 4), out=str(target)))
    service.write(service.render(service.build_table("I"), OutputFormat.CSV))
    assert target.read_text().startswith("k,r_k,r_k_rounded,kappa_k,kappa_k_rounded\n")


def test_base_seeds():
    config = RunConfig(command="table", table="III", samples=3, seed=5)
    seeds = base_seeds(4, config)
    assert seeds[0] is None and len(seeds) == 3
    assert seeds == base_seeds(4, config)
    assert base_seeds(3, config) == [None]


def test_min_order_regimes():
    config = RunConfig(command="table", table="III")
    assert min_order_for("III", config) == 500
    assert min_order_for("IV", config) == 200
    assert min_order_for(GAP_TABLE, config) == 200
    assert min_order_for("III", RunConfig(command="table", min_order=40)) == 40


def test_table_three_row_with_samples():
    config = RunConfig(command="table", table="III", p=2, samples=2)
    row = build_row("III", 4, config)
    assert row.n == 22
    assert row.r_hat_min == pytest.approx(row.r_hat_max)
    assert row.gap == pytest.approx(row.m_hat_k - row.r_hat_k)
    assert row.r_k == pytest.approx(0.912, abs=1e-3)


def test_gap_row():
    row = build_row(GAP_TABLE, 4, RunConfig(command="gap", p=2, d_w=10.0))
    assert row.d_w == 10.0
    assert row.gap_w > 0
    assert not row.violation_candidate


def test_empty_degree_range_rejected():
    with pytest.raises(ValueError):
        RunConfig(command="table", k_range=(5, 3))
