"""Dataset analysis reports: content, rendering, round-trips, plot payloads."""

import json

import numpy as np
import pytest

from unitshiha import analyze_dataset, emit_report, load_dataset
from unitshiha.report import (
    read_structured_report,
    render_gof_table,
    render_simulation_table,
    simulation_rows,
    structured_document,
)


@pytest.fixture(scope="module")
def report2():
    return analyze_dataset(load_dataset("data2"))


@pytest.fixture(scope="module")
def report4():
    return analyze_dataset(load_dataset("data4"))


class TestAnalyze:
    def test_best_by_aic_second_dataset(self, report2):
        assert report2.best_by["aic"] == "USh"

    def test_best_designations_fourth_dataset(self, report4):
        assert report4.best_by["aic"] == "USh"
        assert report4.best_by["ks_pvalue"] == "UB"

    def test_third_dataset_eta_at_bound(self):
        rep = analyze_dataset(load_dataset("data3"), which=["USh"])
        row = rep.reports[0]
        assert row.estimates[1] == pytest.approx(1000.0, abs=1e-6)
        assert row.at_bound[1]

    def test_row_order_matches_family_order(self, report2):
        assert [r.family_tag for r in report2.reports] == \
            ["USh", "Kw", "UB", "UE", "EUEHL", "UEL", "Beta", "TL"]

    def test_text_rendering_contains_all_rows(self, report2):
        text = render_gof_table(report2.reports)
        for tag in ("USh", "Kw", "UB", "UE", "EUEHL", "UEL", "Beta", "TL"):
            assert tag in text


class TestPlotData:
    def test_cdf_grid_monotone(self, report2):
        curve = report2.plot_data["cdf_USh"]
        assert curve.shape == (512,)
        assert (np.diff(curve) >= 0).all()

    def test_pdf_grid_positive(self, report2):
        assert (report2.plot_data["pdf_USh"] > 0).all()

    def test_ttt_and_histogram_present(self, report2):
        assert report2.plot_data["ttt"].shape == (report2.n + 1, 2)
        hist = report2.plot_data["histogram"]
        widths = hist[:, 1] - hist[:, 0]
        total = float((widths * hist[:, 2]).sum())
        assert total == pytest.approx(1.0, rel=1e-9)

    def test_pp_qq_shapes(self, report2):
        assert report2.plot_data["pp_USh"].shape == (report2.n, 2)
        assert report2.plot_data["qq_USh"].shape == (report2.n, 2)

    def test_plot_data_files(self, tmp_path, report2):
        emit_report(report2, "plot-data", tmp_path / "plots")
        files = sorted(p.name for p in (tmp_path / "plots").iterdir())
        assert "data2_cdf_USh.csv" in files
        assert "data2_ttt.csv" in files
        body = (tmp_path / "plots" / "data2_cdf_USh.csv").read_text().splitlines()
        assert body[0] == "cdf_USh"
        vals = np.array([float(v) for v in body[1:]])
        assert vals.size == 512 and (np.diff(vals) >= 0).all()


class TestStructured:
    def test_round_trip(self, tmp_path, report2):
        path = tmp_path / "data2.json"
        emit_report(report2, "structured", path)
        doc = read_structured_report(path)
        assert doc == structured_document(report2)
        assert doc["schema_version"] == 1
        assert doc["best_by"]["aic"] == "USh"
        assert len(doc["rows"]) == 8

    def test_rows_are_json_scalars(self, report2):
        doc = structured_document(report2)
        json.dumps(doc)  # no numpy scalars may leak through

    def test_bad_version_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"schema_version": 99}')
        with pytest.raises(ValueError):
            read_structured_report(path)


class TestSimulationRendering:
    def test_rows_and_table(self):
        from unitshiha import SimConfig, UShParams, run_study
        config = SimConfig(true_params=UShParams(1.0, 0.7), sample_sizes=(30,),
                           replications=3, bootstrap_resamples=10, seed=4)
        results = run_study(config)
        rows = simulation_rows(results)
        assert len(rows) == 1
        assert set(rows[0]) == {"omega", "eta", "n", "bias_omega", "bias_eta",
                                "mse_omega", "mse_eta", "mre_omega", "mre_eta",
                                "cp_omega", "cp_eta", "cr"}
        text = render_simulation_table(results)
        assert "bias_omega" in text and len(text.splitlines()) == 3
