"""
Tests for the convergence benchmark.
"""

import json
import math

import numpy as np
import pytest

from smoothdist.core import bench as bench_module
from smoothdist.core.bench import (
    BenchConfig,
    BenchRecord,
    BenchStats,
    MetricCache,
    generate_pair,
    pair_seeds,
    read_records_csv,
    run_benchmark,
    run_pair,
    summary_dict,
    write_records_csv,
    write_summary_json,
)
from smoothdist.core.geometry import contains, random_polytope

SMALL = BenchConfig(n_pairs=3, dim=2, n_ineq=5, seed=7)


def _records():
    return [
        BenchRecord(2, 1.2, 0.4, 30, 800.0, True),
        BenchRecord(0, 0.5, 0.1, 10, 200.0, True),
        BenchRecord(1, 0.9, float("nan"), 5000, 90000.0, False, error="budget"),
    ]


class TestBenchConfig:
    """Test cases for BenchConfig."""

    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"n_pairs": 0}, "n_pairs"),
            ({"min_euclid_dist": 0.0}, "min_euclid_dist"),
            ({"workers": 0}, "workers"),
            ({"calibration_samples": 0}, "calibration_samples"),
            ({"subset_method": "greedy"}, "subset_method"),
        ],
    )
    def test_invalid(self, kwargs, message):
        """Test rejected protocol parameters."""
        with pytest.raises(ValueError, match=message):
            BenchConfig(**kwargs)

    def test_to_dict(self):
        """Test that kernel parameters are flattened for JSON."""
        data = BenchConfig().to_dict()

        assert data["phi"] == {"h": 0.1, "k": 2}
        assert data["n_pairs"] == 1000
        assert data["sigma"] == 0.989
        assert data["calibrate"] is True
        assert data["subset_method"] == "enumerate"


class TestPairGeneration:
    """Seeded pair generation."""

    def test_seeds_are_deterministic_and_distinct(self):
        """Test that seeds depend on the master seed, pair and attempt only."""
        assert pair_seeds(0, 3, 0) == pair_seeds(0, 3, 0)
        assert pair_seeds(0, 3, 0) != pair_seeds(0, 3, 1)
        assert pair_seeds(0, 3, 0) != pair_seeds(1, 3, 0)
        assert len(set(pair_seeds(0, 3, 0))) == 3

    def test_generate_pair(self):
        """Test repeatability and placement of the generated pair."""
        config = BenchConfig(dim=3, n_ineq=10, seed=5)
        a1, b1 = generate_pair(config, 4, 0)
        a2, b2 = generate_pair(config, 4, 0)

        assert np.array_equal(a1.normals, a2.normals)
        assert np.array_equal(b1.offsets, b2.offsets)
        assert a1.dim == b1.dim == 3
        assert a1.n_halfspaces == b1.n_halfspaces == 10
        assert contains(a1, np.zeros(3))


class TestBenchStats:
    """Aggregation over benchmark records."""

    def test_from_records(self):
        """Test that aggregates ignore records that did not converge."""
        stats = BenchStats.from_records(_records())

        assert [r.pair_id for r in stats.records] == [0, 1, 2]
        assert stats.n_pairs == 3
        assert stats.n_converged == 2
        assert stats.convergence_rate == pytest.approx(2 / 3)
        assert stats.mean_iterations == 20
        assert stats.max_iterations == 30
        assert stats.mean_time_us == 500.0
        assert stats.max_time_us == 800.0
        assert sum(stats.iteration_histogram["counts"]) == 2
        assert sum(stats.time_histogram["counts"]) == 2

    def test_nothing_converged(self):
        """Test the aggregates of a fully failed run."""
        stats = BenchStats.from_records([BenchRecord(0, 1.0, float("nan"), 5000, 1.0, False)])

        assert stats.n_converged == 0
        assert stats.convergence_rate == 0.0
        assert math.isnan(stats.mean_iterations)
        assert stats.max_iterations == 0

    def test_csv_reproduces_aggregates(self, tmp_path):
        """Test that aggregates recomputed from the records file match exactly."""
        stats = BenchStats.from_records(_records())
        path = tmp_path / "records.csv"
        write_records_csv(stats.records, path)
        reread = BenchStats.from_records(read_records_csv(path))

        assert path.read_text(encoding="utf-8").splitlines()[0] == (
            "pair_id,euclid_dist,lambda,iterations,time_us,converged"
        )
        assert reread.aggregates() == stats.aggregates()
        assert reread.iteration_histogram == stats.iteration_histogram
        assert math.isnan(reread.records[1].value)

    def test_summary_json(self, tmp_path):
        """Test that NaN aggregates become null in the summary."""
        stats = BenchStats.from_records([BenchRecord(0, 1.0, float("nan"), 5000, 1.0, False)])
        path = tmp_path / "summary.json"
        write_summary_json(stats, SMALL, path)
        data = json.loads(path.read_text(encoding="utf-8"))

        assert data["aggregates"]["mean_iterations"] is None
        assert data["aggregates"]["n_pairs"] == 1
        assert data["config"]["seed"] == 7
        assert set(data["histograms"]) == {"iterations", "time_us"}
        assert summary_dict(stats, SMALL)["aggregates"] == data["aggregates"]


class TestRunBenchmark:
    """Small end-to-end benchmark runs."""

    def test_small_run(self):
        """Test records, progress reporting and consistency of the aggregates."""
        seen = []
        stats = run_benchmark(SMALL, progress=seen.append)

        assert seen == [1, 2, 3]
        assert stats.n_pairs == 3
        assert stats.n_converged >= 1
        assert stats.convergence_rate == stats.n_converged / 3
        for record in stats.records:
            if record.converged:
                assert record.euclid_dist >= SMALL.min_euclid_dist
                assert record.value > 0
                assert 1 <= record.iterations <= SMALL.max_iter

    def test_deterministic(self):
        """Test that two runs with one seed solve the same pairs the same way."""
        first = run_benchmark(SMALL).records
        second = run_benchmark(SMALL).records

        assert [(r.euclid_dist, r.iterations, r.converged) for r in first] == [
            (r.euclid_dist, r.iterations, r.converged) for r in second
        ]

    @pytest.mark.slow
    def test_workers_match_serial_run(self):
        """Test that a process pool reproduces the serial records."""
        serial = run_benchmark(SMALL).records
        parallel = run_benchmark(BenchConfig(n_pairs=3, dim=2, n_ineq=5, seed=7, workers=2)).records

        assert [(r.pair_id, r.euclid_dist, r.iterations) for r in parallel] == [
            (r.pair_id, r.euclid_dist, r.iterations) for r in serial
        ]

    @pytest.mark.slow
    def test_convergence_study(self):
        """Test the thousand-pair protocol in three dimensions with fixed 1/6 weights."""
        config = BenchConfig(n_pairs=1000, dim=3, n_ineq=10, weight=1 / 6, calibrate=False)
        stats = run_benchmark(config)

        assert stats.convergence_rate == 1.0
        assert 5 <= stats.mean_iterations <= 200
        assert stats.max_iterations <= 2000
        assert all(r.euclid_dist >= config.min_euclid_dist for r in stats.records)


class TestMetricCache:
    """Per-polytope metric reuse."""

    @pytest.fixture
    def calls(self, monkeypatch):
        seen = []
        real = bench_module.calibrate

        def counting(polytope, phi, **kwargs):
            seen.append(polytope.n_halfspaces)
            return real(polytope, phi, **kwargs)

        monkeypatch.setattr(bench_module, "calibrate", counting)
        return seen

    def test_calibrates_once_per_polytope(self, calls):
        """Test that a second request for one polytope is served from the cache."""
        cache = MetricCache()
        config = BenchConfig(dim=2, n_ineq=5, calibration_samples=300)
        poly = random_polytope(0, dim=2, n_ineq=5)

        first = cache.metric(config, poly)
        second = cache.metric(config, poly)

        assert first is second
        assert calls == [5]
        assert (cache.hits, cache.misses, len(cache)) == (1, 1, 1)

    def test_settings_are_part_of_the_key(self, calls):
        """Test that fixed scales and calibrated scales are kept apart."""
        cache = MetricCache()
        poly = random_polytope(0, dim=2, n_ineq=5)

        fixed = cache.metric(BenchConfig(dim=2, n_ineq=5, calibrate=False), poly)
        tuned = cache.metric(BenchConfig(dim=2, n_ineq=5, calibration_samples=300), poly)

        assert fixed is not tuned
        assert fixed.sigma == 0.989
        assert calls == [5]
        assert len(cache) == 2

    def test_oldest_entry_is_dropped(self, calls):
        """Test eviction beyond maxsize."""
        cache = MetricCache(maxsize=1)
        config = BenchConfig(dim=2, n_ineq=5, calibrate=False)
        first = random_polytope(0, dim=2, n_ineq=5)

        cache.metric(config, first)
        cache.metric(config, random_polytope(1, dim=2, n_ineq=5))
        cache.metric(config, first)

        assert len(cache) == 1
        assert cache.misses == 3
        cache.clear()
        assert (len(cache), cache.hits, cache.misses) == (0, 0, 0)

    def test_run_pair_reuses_calibration(self, calls):
        """Test that solving one pair twice calibrates its two polytopes once."""
        cache = MetricCache()
        config = BenchConfig(n_pairs=1, dim=2, n_ineq=5, seed=7, calibration_samples=300)

        first = run_pair(config, 0, cache=cache)
        second = run_pair(config, 0, cache=cache)

        assert len(calls) == 2
        assert cache.hits == 2
        assert (first.iterations, first.converged) == (second.iterations, second.converged)
