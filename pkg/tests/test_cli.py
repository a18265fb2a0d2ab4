"""
Tests for the smoothdist command line.
"""

import csv
import json
import logging

import pytest
import yaml
from typer.testing import CliRunner

from smoothdist import __version__
from smoothdist import main as main_module
from smoothdist.core.gap import SWEEP_COLUMNS
from smoothdist.core.geometry import box_polytope
from smoothdist.core.geometry.io import save_polytope
from smoothdist.main import app
from smoothdist.utils import display

runner = CliRunner()


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run inside an empty directory with a unit cube on disk."""
    monkeypatch.chdir(tmp_path)
    save_polytope(box_polytope([0.5, 0.5, 0.5]), tmp_path / "cube.json")
    return tmp_path


def test_version():
    """Test that --version prints the package version."""
    result = runner.invoke(app, ["--version"])

    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_info(workdir):
    """Test that the effective configuration is shown."""
    result = runner.invoke(app, ["info"])

    assert result.exit_code == 0


class TestDist:
    """Test cases for the dist command."""

    def test_separated_cubes(self, workdir):
        """Test the JSON result for two cubes three apart."""
        out = workdir / "dist.json"
        result = runner.invoke(
            app, ["dist", "cube.json", "cube.json", "--pose-b-t", "3,0,0", "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["euclid_dist"] == pytest.approx(2.0)
        assert data["lambda"] > 0
        assert data["converged"]
        assert "gradient" not in data

    def test_gradient(self, workdir):
        """Test that --gradient adds the pose derivatives."""
        out = workdir / "dist.json"
        result = runner.invoke(
            app, ["dist", "cube.json", "cube.json", "--pose-b-t", "3,0,0", "--gradient", "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["gradient"]["translation_b"][0] > 0
        assert len(data["gradient"]["rotation_a"]) == 3

    def test_missing_file(self, workdir):
        """Test the usage exit code for a missing body file."""
        result = runner.invoke(app, ["dist", "cube.json", "nowhere.json"])

        assert result.exit_code == 2

    def test_bad_vector(self, workdir):
        """Test the usage exit code for a translation of the wrong length."""
        result = runner.invoke(app, ["dist", "cube.json", "cube.json", "--pose-b-t", "3,0"])

        assert result.exit_code == 2

    def test_invalid_json(self, workdir):
        """Test the usage exit code for a file that is not JSON."""
        (workdir / "broken.json").write_text("{not json", encoding="utf-8")
        result = runner.invoke(app, ["dist", "cube.json", "broken.json"])

        assert result.exit_code == 2


def test_bench_writes_records_and_summary(workdir):
    """Test a tiny benchmark run and both of its output files."""
    result = runner.invoke(
        app, ["bench", "--n-pairs", "2", "--dim", "2", "--n-ineq", "5", "--out", "records.csv"]
    )

    assert result.exit_code == 0, result.output
    with open(workdir / "records.csv", encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    summary = json.loads((workdir / "records_summary.json").read_text(encoding="utf-8"))
    assert [int(row["pair_id"]) for row in rows] == [0, 1]
    assert summary["aggregates"]["n_pairs"] == 2
    assert summary["config"]["dim"] == 2


def test_sweep(workdir):
    """Test a short sweep along an approaching path."""
    path_doc = {
        "a": {"translation": [0, 0, 0]},
        "b": {"translation": [3, 0, 0], "linear_velocity": [-0.5, 0, 0]},
    }
    (workdir / "path.json").write_text(json.dumps(path_doc), encoding="utf-8")
    result = runner.invoke(
        app,
        ["sweep", "cube.json", "cube.json", "--path", "path.json", "--n-samples", "3", "--out", "sweep.csv"],
    )

    assert result.exit_code == 0, result.output
    with open(workdir / "sweep.csv", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        rows = list(reader)
    assert reader.fieldnames == SWEEP_COLUMNS
    assert len(rows) == 3


def test_calibrate_then_dist(workdir):
    """Test that a calibrated metric document can be used as a body."""
    result = runner.invoke(app, ["calibrate", "cube.json", "--samples", "500", "--out", "metric.json"])

    assert result.exit_code == 0, result.output
    metric_doc = json.loads((workdir / "metric.json").read_text(encoding="utf-8"))
    assert metric_doc["polytope"] == "cube.json"
    assert 0 < metric_doc["sigma"]

    out = workdir / "dist.json"
    result = runner.invoke(
        app, ["dist", "metric.json", "metric.json", "--pose-b-t", "3,0,0", "--out", str(out)]
    )

    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text(encoding="utf-8"))["lambda"] > 0


class TestValidate:
    """Test cases for the validate command."""

    def test_report_file(self, workdir):
        """Test that both reports are written whatever the outcome."""
        result = runner.invoke(
            app, ["validate", "cube.json", "--sigma", "0.5", "--samples", "200", "--out", "report.json"]
        )

        assert result.exit_code in (0, 1), result.output
        data = json.loads((workdir / "report.json").read_text(encoding="utf-8"))
        assert set(data) == {"kernel", "metric"}
        assert data["kernel"]["passed"]

    def test_inadmissible_kernel(self, workdir):
        """Test the usage exit code for h with a vanishing denominator."""
        result = runner.invoke(app, ["validate", "cube.json", "--h", "0.5", "--k", "2"])

        assert result.exit_code == 2


class TestConfiguration:
    """Settings that reach the commands through config.yaml and the environment."""

    @pytest.fixture
    def restore_colors(self):
        yield
        display.set_colors(True)
        main_module.console.no_color = False

    def _write_config(self, workdir, data):
        (workdir / "config.yaml").write_text(yaml.safe_dump(data), encoding="utf-8")

    def test_info_override_and_save(self, workdir):
        """Test that --set values are typed like the defaults and saved as YAML."""
        result = runner.invoke(
            app,
            ["info", "--set", "solver.tol=1e-6", "--set", "metric.subset_method=milp", "--save", "saved.yaml"],
        )

        assert result.exit_code == 0, result.output
        data = yaml.safe_load((workdir / "saved.yaml").read_text(encoding="utf-8"))
        assert data["solver"]["tol"] == 1e-6
        assert data["metric"]["subset_method"] == "milp"
        assert data["phi"]["k"] == 2

    @pytest.mark.parametrize("assignment", ["solver.tol", "solver.max_iter=many", "=3"])
    def test_info_bad_override(self, workdir, assignment):
        """Test the usage exit code for malformed overrides."""
        result = runner.invoke(app, ["info", "--set", assignment])

        assert result.exit_code == 2

    def test_debug_from_environment(self, workdir, monkeypatch):
        """Test that SMOOTHDIST_DEBUG turns on debug logging."""
        monkeypatch.setenv("SMOOTHDIST_DEBUG", "true")
        result = runner.invoke(app, ["info"])

        assert result.exit_code == 0, result.output
        assert logging.getLogger("smoothdist").level == logging.DEBUG

    def test_colors_from_environment(self, workdir, monkeypatch, restore_colors):
        """Test that SMOOTHDIST_COLORS=false disables colored output."""
        monkeypatch.setenv("SMOOTHDIST_COLORS", "false")
        result = runner.invoke(app, ["info"])

        assert result.exit_code == 0, result.output
        assert display.console.no_color
        assert main_module.console.no_color

    def test_log_format_from_file(self, workdir):
        """Test that logging.format is applied to the package handler."""
        self._write_config(workdir, {"logging": {"format": "%(levelname)s|%(message)s"}})
        result = runner.invoke(app, ["info"])

        assert result.exit_code == 0, result.output
        handler = logging.getLogger("smoothdist").handlers[0]
        assert handler.formatter._fmt == "%(levelname)s|%(message)s"

    def test_weight_margin_from_file(self, workdir):
        """Test that metric.weight_margin shapes the uniform weights."""
        self._write_config(workdir, {"metric": {"weight_margin": 1.0}})
        result = runner.invoke(app, ["calibrate", "cube.json", "--samples", "300", "--out", "metric.json"])

        assert result.exit_code == 0, result.output
        metric_doc = json.loads((workdir / "metric.json").read_text(encoding="utf-8"))
        assert metric_doc["weights"] == pytest.approx([0.25] * 6)

    def test_unknown_subset_method(self, workdir):
        """Test the usage exit code for an unknown metric.subset_method."""
        self._write_config(workdir, {"metric": {"subset_method": "greedy"}})
        result = runner.invoke(app, ["dist", "cube.json", "cube.json", "--pose-b-t", "3,0,0"])

        assert result.exit_code == 2

    def test_bench_without_calibration(self, workdir):
        """Test that --no-calibrate keeps the configured scales."""
        result = runner.invoke(
            app,
            ["bench", "--n-pairs", "1", "--dim", "2", "--n-ineq", "5", "--no-calibrate", "--out", "records.csv"],
        )

        assert result.exit_code == 0, result.output
        summary = json.loads((workdir / "records_summary.json").read_text(encoding="utf-8"))
        assert summary["config"]["calibrate"] is False
        assert summary["config"]["sigma"] == 0.989
        assert summary["config"]["subset_method"] == "enumerate"

    def test_sweep_uses_its_own_tolerance(self, workdir, monkeypatch):
        """Test that sweep reads sweep.tol and the Euclidean settings."""
        self._write_config(workdir, {"sweep": {"tol": 1e-7}, "euclid": {"max_iter": 321}})
        seen = []
        real = main_module.sweep

        def recording(metric_a, metric_b, path, n_samples, options):
            seen.append(options)
            return real(metric_a, metric_b, path, n_samples, options)

        monkeypatch.setattr(main_module, "sweep", recording)
        path_doc = {
            "a": {"translation": [0, 0, 0]},
            "b": {"translation": [3, 0, 0], "linear_velocity": [-0.5, 0, 0]},
        }
        (workdir / "path.json").write_text(json.dumps(path_doc), encoding="utf-8")
        result = runner.invoke(
            app, ["sweep", "cube.json", "cube.json", "--path", "path.json", "--n-samples", "2", "--anderson", "0"]
        )

        assert result.exit_code == 0, result.output
        options = seen[0]
        assert options.tol == 1e-7
        assert options.anderson == 0
        assert options.euclid_max_iter == 321
        assert options.with_gradient is False
