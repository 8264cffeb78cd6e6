"""Tests for CSV ingestion, dataset writing, and report serialization."""

import json
import math

import numpy as np
import pytest

from objentropy.data import partition_zero_state
from objentropy.errors import EmptyFile, MissingColumn, UnparseableNumber
from objentropy.information import EntropyEstimate, rank_objectives
from objentropy.io import (
    format_report,
    load_csv,
    report_records,
    write_dataset_csv,
)
from objentropy.likelihoods import CATALOG, evaluate_objective
from objentropy.synthetic import SyntheticModel, generate


class TestLoadCsv:
    def test_two_row_file(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("location_id,observed,predicted\nA,1.0,2.0\nA,2.0,4.0\n")
        ds = load_csv(f)
        assert ds.n_total == 2
        np.testing.assert_array_equal(ds.observed, [1.0, 2.0])

    def test_missing_column(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("location_id,observed\nA,1.0\n")
        with pytest.raises(MissingColumn) as err:
            load_csv(f)
        assert "predicted" in str(err.value)

    def test_unparseable_number_names_line(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("location_id,observed,predicted\nA,1.0,abc\n")
        with pytest.raises(UnparseableNumber) as err:
            load_csv(f)
        assert "line 2" in str(err.value)

    def test_empty_file(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("")
        with pytest.raises(EmptyFile):
            load_csv(f)
        f.write_text("location_id,observed,predicted\n")
        with pytest.raises(EmptyFile):
            load_csv(f)

    def test_timestamp_column_preserved(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text(
            "timestamp,location_id,observed,predicted\n"
            "2020-01-02,A,1.0,2.0\n"
            "2020-01-01,A,2.0,4.0\n"
        )
        ds = load_csv(f)
        assert ds.series[0].timestamps == ("2020-01-02", "2020-01-01")

    def test_interleaved_locations_grouped_in_file_order(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text(
            "location_id,observed,predicted\n"
            "B,1.0,1.0\nA,2.0,2.0\nB,3.0,3.0\n"
        )
        ds = load_csv(f)
        assert ds.location_ids == ("B", "A")
        np.testing.assert_array_equal(ds.series[0].observed, [1.0, 3.0])


class TestRoundTrip:
    def test_synth_round_trip_is_exact(self, tmp_path):
        model = SyntheticModel("multiplicative-log-laplace", 0.5,
                               zero_inflation_rate=0.05, n_per_location=400,
                               n_locations=3, seed=17)
        ds, _ = generate(model)
        path = tmp_path / "synth.csv"
        write_dataset_csv(ds, path)
        back = load_csv(path)
        assert back.location_ids == ds.location_ids
        np.testing.assert_array_equal(back.observed, ds.observed)
        np.testing.assert_array_equal(back.predicted, ds.predicted)


def _report():
    model = SyntheticModel("multiplicative-lognormal", 0.6,
                           zero_inflation_rate=0.04, n_per_location=600,
                           n_locations=2, seed=8)
    ds, _ = generate(model)
    part = partition_zero_state(ds, 0.0028)
    estimates = [
        EntropyEstimate.from_fitted(evaluate_objective(s, ds, ds, part))
        for s in CATALOG.values()
    ]
    return rank_objectives(estimates, adjusted=True,
                           descriptions={n: s.description
                                         for n, s in CATALOG.items()})


class TestReportFormats:
    def test_csv_json_numeric_parity(self):
        """CSV and JSON carry the same numbers to 12 significant digits."""
        report = _report()
        csv_text = format_report(report, "csv")
        json_rows = json.loads(format_report(report, "json"))["rows"]
        lines = csv_text.strip().splitlines()
        header = lines[0].split(",")
        for line, jrow in zip(lines[1:], json_rows):
            cells = dict(zip(header, line.split(",")))
            for field in ("h_bits", "h_adj_bits", "weight", "loglik_nats"):
                if cells[field] == "":
                    assert jrow[field] is None
                    continue
                a, b = float(cells[field]), float(jrow[field])
                assert f"{a:.12g}" == f"{b:.12g}"

    def test_table_rounds_to_two_decimals(self):
        report = _report()
        table = format_report(report, "table")
        assert "Objective" in table and "Rank" in table
        for row in report.rows:
            assert f"{row.weight:.2f}" in table

    def test_json_is_valid_without_nan(self):
        report = _report()
        payload = json.loads(format_report(report, "json"))
        assert payload["aic_adjusted"] is True
        assert len(payload["rows"]) == 10

    def test_records_null_out_non_finite(self):
        est = EntropyEstimate(name="DEAD", k=1, h_bits=float("inf"),
                              h_adj_bits=float("inf"),
                              loglik_nats=float("-inf"), n_eval=5,
                              zero_likelihood=True)
        report = rank_objectives([est, EntropyEstimate(
            name="OK", k=1, h_bits=2.0, h_adj_bits=2.1)])
        rec = [r for r in report_records(report) if r["objective"] == "DEAD"][0]
        assert rec["h_bits"] is None
        assert rec["loglik_nats"] is None
        assert rec["zero_likelihood"] is True
        assert math.isfinite(rec["weight"]) and rec["weight"] == 0.0
