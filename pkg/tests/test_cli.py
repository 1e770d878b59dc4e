"""Tests for the command-line interface and its file outputs."""

from __future__ import annotations

import json

import numpy as np
import pytest

from circspec.cli import main
from circspec.selftest import SelftestLimits, run_selftest

from conftest import build_tensor_file, gaussian_layer_arrays


@pytest.fixture()
def small_weights(tmp_path):
    path = tmp_path / "smallnet.tensors"
    arrays = gaussian_layer_arrays(seed=5, orders=(8, 12, 16), cols_factor=4)
    path.write_bytes(build_tensor_file(arrays, metadata={"architecture": "smallnet"}))
    return path


@pytest.fixture()
def conjugate_weights(tmp_path):
    # orders >= 48 keep every circular-member outlier eigenvalue beyond
    # eps_max, so the default conjugacy verdict is solidly true
    path = tmp_path / "midnet.tensors"
    arrays = gaussian_layer_arrays(seed=6, orders=(48, 64, 80), cols_factor=4)
    path.write_bytes(build_tensor_file(arrays, metadata={"architecture": "midnet"}))
    return path


def _run_analyze(path, out_dir, *extra):
    return main(["analyze", "--weights", str(path), "--seed", "3", "--out", str(out_dir), *extra])


class TestAnalyze:
    def test_minimal_run_populates_report(self, tmp_path, small_weights, capsys):
        assert _run_analyze(small_weights, tmp_path / "out") == 0
        report = json.loads((tmp_path / "out" / "smallnet.report.json").read_text())
        assert report["tool_version"]
        assert report["ensemble"]["m"] == 3
        assert report["ensemble"]["orders"] == [8, 12, 16]
        assert report["ensemble"]["pooled_count"] == 36
        assert report["cue"]["pooled_count"] == 36
        assert 0.0 <= report["ensemble"]["in_range_fraction"] <= 1.0
        assert report["csd"]["variance"] >= 0.0
        assert isinstance(report["csd"]["conjugate"], bool)
        assert "smallnet" in capsys.readouterr().out

    def test_single_layer_file(self, tmp_path):
        path = tmp_path / "one.tensors"
        path.write_bytes(build_tensor_file(gaussian_layer_arrays(seed=1, orders=(6,))))
        assert _run_analyze(path, tmp_path / "out") == 0
        report = json.loads((tmp_path / "out" / "one.report.json").read_text())
        assert report["ensemble"]["m"] == 1
        assert report["config"]["label"] == "one"

    def test_curve_file_has_header_and_bins_rows(self, tmp_path, small_weights):
        _run_analyze(small_weights, tmp_path / "out")
        lines = (tmp_path / "out" / "smallnet.curve.csv").read_text().splitlines()
        assert lines[0] == "epsilon,rho_layer,rho_cue,delta,cumulative"
        assert len(lines) == 1001
        first = lines[1].split(",")
        assert float(first[0]) == 0.0

    def test_corrupt_file_exits_two(self, tmp_path, capsys):
        path = tmp_path / "corrupt.tensors"
        path.write_bytes(b"\xff" * 32)
        assert _run_analyze(path, tmp_path / "out") == 2
        assert "error:" in capsys.readouterr().err

    def test_empty_selection_exits_two(self, tmp_path, capsys):
        path = tmp_path / "biasonly.tensors"
        path.write_bytes(build_tensor_file([("x.bias", np.zeros(4, np.float32))]))
        assert _run_analyze(path, tmp_path / "out") == 2
        assert "empty" in capsys.readouterr().err

    def test_missing_file_exits_two(self, tmp_path, capsys):
        assert _run_analyze(tmp_path / "absent.tensors", tmp_path / "out") == 2
        assert "error:" in capsys.readouterr().err

    def test_config_echo_matches_flags(self, tmp_path, small_weights):
        out = tmp_path / "out"
        code = _run_analyze(
            small_weights, out,
            "--bins", "400", "--eps-max", "3.5", "--scaling", "inv-n",
            "--reduction", "real-part", "--reps", "2", "--max-order", "12",
            "--tail-fraction", "0.25", "--tail-tol", "0.01", "--label", "renamed",
        )
        assert code == 0
        report = json.loads((out / "smallnet.report.json").read_text())
        config = report["config"]
        assert config["bins"] == 400
        assert config["eps_max"] == 3.5
        assert config["scaling"] == "inv-n"
        assert config["reduction"] == "real-part"
        assert config["reps"] == 2
        assert config["max_order"] == 12
        assert config["tail_fraction"] == 0.25
        assert config["tail_tol"] == 0.01
        assert config["label"] == "renamed"
        assert config["seed"] == 3
        # max_order 12 drops the order-16 layer; reps 2 doubles cue count
        assert report["ensemble"]["orders"] == [8, 12]
        assert report["cue"]["pooled_count"] == 2 * (8 + 12)
        lines = (out / "smallnet.curve.csv").read_text().splitlines()
        assert len(lines) == 401

    def test_byte_identical_across_runs_and_workers(self, tmp_path, small_weights):
        _run_analyze(small_weights, tmp_path / "a", "--workers", "1")
        _run_analyze(small_weights, tmp_path / "b", "--workers", "4")
        for name in ("smallnet.report.json", "smallnet.curve.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestCompare:
    def test_report_against_itself_is_equivalent(self, tmp_path, conjugate_weights, capsys):
        _run_analyze(conjugate_weights, tmp_path / "out")
        capsys.readouterr()  # drop the analyze output
        report_path = tmp_path / "out" / "midnet.report.json"
        assert json.loads(report_path.read_text())["csd"]["conjugate"] is True
        assert main(["compare", str(report_path), str(report_path), "--delta", "0.05"]) == 0
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["equivalent"] is True
        assert verdict["var_abs_diff"] == 0.0

    def test_false_verdict_still_exits_zero(self, tmp_path, small_weights, capsys):
        _run_analyze(small_weights, tmp_path / "out")
        capsys.readouterr()  # drop the analyze output
        report_path = tmp_path / "out" / "smallnet.report.json"
        doctored = json.loads(report_path.read_text())
        doctored["csd"]["variance"] += 10.0
        other_path = tmp_path / "doctored.report.json"
        other_path.write_text(json.dumps(doctored))
        assert main(["compare", str(report_path), str(other_path), "--delta", "0.05"]) == 0
        verdict = json.loads(capsys.readouterr().out)
        assert verdict["equivalent"] is False
        assert verdict["var_abs_diff"] == pytest.approx(10.0)

    def test_incompatible_grids_exit_two(self, tmp_path, small_weights, capsys):
        _run_analyze(small_weights, tmp_path / "a")
        _run_analyze(small_weights, tmp_path / "b", "--bins", "500")
        code = main([
            "compare",
            str(tmp_path / "a" / "smallnet.report.json"),
            str(tmp_path / "b" / "smallnet.report.json"),
        ])
        assert code == 2
        assert "not comparable" in capsys.readouterr().err


class TestSelftest:
    def test_fresh_build_passes(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert "all checks passed" in out
        assert "FAIL" not in out

    def test_deterministic_summary(self, capsys):
        main(["selftest", "--seed", "5"])
        first = capsys.readouterr().out
        main(["selftest", "--seed", "5"])
        second = capsys.readouterr().out
        assert first == second

    def test_perturbed_tolerance_reports_failure(self):
        # negative control: impossible tolerance must be caught and reported
        results, passed = run_selftest(seed=0, limits=SelftestLimits(unitarity_tol=1e-300))
        assert not passed
        assert any(not r.passed and r.name == "unitarity" for r in results)
