"""
Convergence benchmark over random polytope pairs.

Each pair is generated from seeds derived from (seed, pair_id, attempt),
filtered by Euclidean distance, solved from the Euclidean closest point and
timed per solve. Records are ordered by pair_id whatever the worker count.
"""

import csv
import json
import statistics
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import CalibrationFailed, GenerationFailed, MaxIterExceeded, ProjectionStalled
from .euclid import PAIR_MAX_ITER, PAIR_TOL, euclid_pair
from .gap import alternate, lambda_value
from .geometry import SUBSET_METHODS, HalfSpacePolytope, random_polytope
from .logger import LoggerMixin, get_logger
from .p2s import WEIGHT_MARGIN, P2SMetric, calibrate
from .phi import PhiParams

logger = get_logger(__name__)

PathLike = Union[str, Path]

RECORD_COLUMNS = ["pair_id", "euclid_dist", "lambda", "iterations", "time_us", "converged"]
ITERATION_BIN_EDGES = [0, 5, 10, 20, 30, 50, 75, 100, 150, 200, 300, 500, 1000, 2000, 5000, 100000]
TIME_US_BIN_EDGES = [0, 50, 100, 200, 500, 1000, 2000, 5000, 10000, 20000, 50000, 100000, 1e9]
SEPARATION_RANGE = (1.0, 3.0)
MAX_REGENERATIONS = 1000


@dataclass
class BenchConfig:
    """Protocol parameters of the convergence study."""

    n_pairs: int = 1000
    dim: int = 3
    n_ineq: int = 10
    min_euclid_dist: float = 0.05
    phi: PhiParams = field(default_factory=lambda: PhiParams(h=0.1, k=2))
    eps: float = 0.01
    sigma: float = 0.989
    tol: float = 1e-3
    max_iter: int = 5000
    seed: int = 0
    scale: float = 1.0
    weight: Optional[float] = None
    calibrate: bool = True
    calibration_samples: int = 2000
    target_margin: float = 0.0
    weight_margin: float = WEIGHT_MARGIN
    subset_method: str = "enumerate"
    euclid_tol: float = PAIR_TOL
    euclid_max_iter: int = PAIR_MAX_ITER
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_pairs < 1:
            raise ValueError("n_pairs must be at least 1")
        if not self.min_euclid_dist > 0:
            raise ValueError("min_euclid_dist must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.calibration_samples < 1:
            raise ValueError("calibration_samples must be at least 1")
        if self.subset_method not in SUBSET_METHODS:
            raise ValueError(f"subset_method must be one of: {', '.join(SUBSET_METHODS)}")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["phi"] = {"h": self.phi.h, "k": self.phi.k}
        return data


@dataclass
class BenchRecord:
    pair_id: int
    euclid_dist: float
    value: float
    iterations: int
    time_us: float
    converged: bool
    error: Optional[str] = None

    def as_csv_row(self) -> Dict[str, Any]:
        return {
            "pair_id": self.pair_id,
            "euclid_dist": repr(float(self.euclid_dist)),
            "lambda": repr(float(self.value)),
            "iterations": self.iterations,
            "time_us": repr(float(self.time_us)),
            "converged": str(self.converged).lower(),
        }


def _histogram(values: Sequence[float], edges: Sequence[float]) -> Dict[str, List[float]]:
    counts, _ = np.histogram(np.asarray(values, dtype=float), bins=np.asarray(edges, dtype=float))
    return {"edges": list(edges), "counts": [int(c) for c in counts]}


@dataclass
class BenchStats:
    """Per-pair records plus aggregates derived from them."""

    records: List[BenchRecord]
    n_pairs: int = 0
    n_converged: int = 0
    convergence_rate: float = 0.0
    mean_iterations: float = float("nan")
    max_iterations: int = 0
    mean_time_us: float = float("nan")
    max_time_us: float = float("nan")
    iteration_histogram: Dict[str, List[float]] = field(default_factory=dict)
    time_histogram: Dict[str, List[float]] = field(default_factory=dict)

    @classmethod
    def from_records(cls, records: Sequence[BenchRecord]) -> "BenchStats":
        """Aggregate over converged records; the records are sorted by pair_id."""
        ordered = sorted(records, key=lambda r: r.pair_id)
        done = [r for r in ordered if r.converged]
        iterations = [r.iterations for r in done]
        times = [r.time_us for r in done]
        return cls(
            records=ordered,
            n_pairs=len(ordered),
            n_converged=len(done),
            convergence_rate=len(done) / len(ordered) if ordered else 0.0,
            mean_iterations=statistics.mean(iterations) if iterations else float("nan"),
            max_iterations=max(iterations) if iterations else 0,
            mean_time_us=statistics.mean(times) if times else float("nan"),
            max_time_us=max(times) if times else float("nan"),
            iteration_histogram=_histogram(iterations, ITERATION_BIN_EDGES),
            time_histogram=_histogram(times, TIME_US_BIN_EDGES),
        )

    def aggregates(self) -> Dict[str, Any]:
        return {
            "n_pairs": self.n_pairs,
            "n_converged": self.n_converged,
            "convergence_rate": self.convergence_rate,
            "mean_iterations": self.mean_iterations,
            "max_iterations": self.max_iterations,
            "mean_time_us": self.mean_time_us,
            "max_time_us": self.max_time_us,
        }


def pair_seeds(seed: int, pair_id: int, attempt: int) -> Tuple[int, int, int]:
    """Independent seeds for polytope A, polytope B and the placement of B."""
    state = np.random.SeedSequence([seed, pair_id, attempt]).generate_state(3)
    return int(state[0]), int(state[1]), int(state[2])


def generate_pair(config: BenchConfig, pair_id: int, attempt: int) -> Tuple[HalfSpacePolytope, HalfSpacePolytope]:
    """Polytope A around the origin and polytope B at a random offset."""
    seed_a, seed_b, seed_offset = pair_seeds(config.seed, pair_id, attempt)
    rng = np.random.default_rng(seed_offset)
    direction = rng.normal(size=config.dim)
    direction /= np.linalg.norm(direction)
    offset = direction * rng.uniform(*SEPARATION_RANGE) * config.scale
    poly_a = random_polytope(
        seed_a, dim=config.dim, n_ineq=config.n_ineq, scale=config.scale, center=np.zeros(config.dim)
    )
    poly_b = random_polytope(
        seed_b, dim=config.dim, n_ineq=config.n_ineq, scale=config.scale, center=offset
    )
    return poly_a, poly_b


class MetricCache(LoggerMixin):
    """
    Metrics keyed by polytope and the settings that shape them.

    Each polytope is calibrated at most once per cache; the oldest entry is
    dropped beyond ``maxsize``.
    """

    def __init__(self, maxsize: int = 4096) -> None:
        self.maxsize = maxsize
        self.hits = 0
        self.misses = 0
        self._metrics: "OrderedDict[Tuple[Any, ...], P2SMetric]" = OrderedDict()

    def __len__(self) -> int:
        return len(self._metrics)

    def clear(self) -> None:
        self._metrics.clear()
        self.hits = self.misses = 0

    @staticmethod
    def key(config: BenchConfig, polytope: HalfSpacePolytope) -> Tuple[Any, ...]:
        return (
            polytope.normals.tobytes(),
            polytope.offsets.tobytes(),
            config.phi.h,
            config.phi.k,
            config.eps,
            config.sigma,
            config.weight,
            config.weight_margin,
            config.subset_method,
            config.calibrate,
            config.calibration_samples,
            config.target_margin,
            config.seed,
        )

    def metric(self, config: BenchConfig, polytope: HalfSpacePolytope) -> P2SMetric:
        key = self.key(config, polytope)
        cached = self._metrics.get(key)
        if cached is not None:
            self.hits += 1
            self._metrics.move_to_end(key)
            return cached
        self.misses += 1
        metric = _build_metric(config, polytope)
        self._metrics[key] = metric
        if len(self._metrics) > self.maxsize:
            self._metrics.popitem(last=False)
        self.logger.debug("metric for %d facets: eps=%g sigma=%.6f", polytope.n_halfspaces, metric.eps, metric.sigma)
        return metric


# one per process, so pool workers keep their own
METRIC_CACHE = MetricCache()


def _build_metric(config: BenchConfig, polytope: HalfSpacePolytope) -> P2SMetric:
    if config.calibrate:
        eps, sigma = calibrate(
            polytope,
            config.phi,
            weights=config.weight,
            target_margin=config.target_margin,
            eps0=config.eps,
            n_samples=config.calibration_samples,
            seed=config.seed,
            weight_margin=config.weight_margin,
            method=config.subset_method,
        )
    else:
        eps, sigma = config.eps, config.sigma
    return P2SMetric.build(
        polytope,
        config.phi,
        eps=eps,
        sigma=sigma,
        weights=config.weight,
        weight_margin=config.weight_margin,
        method=config.subset_method,
    )


def run_pair(config: BenchConfig, pair_id: int, cache: Optional[MetricCache] = None) -> BenchRecord:
    """
    Generate, filter and solve one pair.

    Pairs that overlap or sit closer than min_euclid_dist are regenerated.
    Generation and calibration failures produce a flagged record. Metrics
    come from ``cache`` (the per-process METRIC_CACHE by default), so each
    polytope is calibrated once.
    """
    if cache is None:
        cache = METRIC_CACHE
    try:
        for attempt in range(MAX_REGENERATIONS):
            poly_a, poly_b = generate_pair(config, pair_id, attempt)
            start = time.perf_counter()
            euclid = euclid_pair(poly_a, poly_b, tol=config.euclid_tol, max_iter=config.euclid_max_iter)
            if euclid.overlap or euclid.distance < config.min_euclid_dist:
                continue
            elapsed = time.perf_counter() - start
            metric_a = cache.metric(config, poly_a)
            metric_b = cache.metric(config, poly_b)
            break
        else:
            raise GenerationFailed(f"no admissible pair after {MAX_REGENERATIONS} attempts")
    except (GenerationFailed, CalibrationFailed, MaxIterExceeded, ProjectionStalled) as e:
        logger.warning("pair %d: %s", pair_id, e)
        return BenchRecord(pair_id, float("nan"), float("nan"), 0, 0.0, False, error=str(e))

    start = time.perf_counter()
    try:
        witness = alternate(metric_a, metric_b, euclid.a0_star, config.tol, config.max_iter)
    except MaxIterExceeded as e:
        elapsed += time.perf_counter() - start
        logger.warning("pair %d did not converge: %s", pair_id, e)
        return BenchRecord(
            pair_id, euclid.distance, float("nan"), e.iterations, elapsed * 1e6, False, error=str(e)
        )
    elapsed += time.perf_counter() - start
    value = lambda_value(metric_a, metric_b, witness.a_star, witness.b_star)
    return BenchRecord(
        pair_id=pair_id,
        euclid_dist=euclid.distance,
        value=value,
        iterations=witness.iterations,
        time_us=elapsed * 1e6,
        converged=True,
    )


def run_benchmark(
        config: BenchConfig,
        progress: Optional[Callable[[int], None]] = None,
) -> BenchStats:
    """
    Run the convergence study.

    Args:
        config: Protocol parameters
        progress: Called with the number of finished pairs

    Returns:
        BenchStats ordered by pair_id
    """
    records: List[BenchRecord] = []
    if config.workers == 1:
        for pair_id in range(config.n_pairs):
            records.append(run_pair(config, pair_id))
            if progress is not None:
                progress(len(records))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            futures = [executor.submit(run_pair, config, pair_id) for pair_id in range(config.n_pairs)]
            for future in as_completed(futures):
                records.append(future.result())
                if progress is not None:
                    progress(len(records))
    stats = BenchStats.from_records(records)
    logger.info(
        "benchmark: %d/%d converged, mean %.2f iterations, max %d",
        stats.n_converged,
        stats.n_pairs,
        stats.mean_iterations,
        stats.max_iterations,
    )
    return stats


def write_records_csv(records: Sequence[BenchRecord], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=RECORD_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record.as_csv_row())


def read_records_csv(path: PathLike) -> List[BenchRecord]:
    """Parse a records CSV written by write_records_csv."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        return [
            BenchRecord(
                pair_id=int(row["pair_id"]),
                euclid_dist=float(row["euclid_dist"]),
                value=float(row["lambda"]),
                iterations=int(row["iterations"]),
                time_us=float(row["time_us"]),
                converged=row["converged"] == "true",
            )
            for row in csv.DictReader(f)
        ]


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if isinstance(value, Path):
        return str(value)
    return value


def summary_dict(stats: BenchStats, config: BenchConfig) -> Dict[str, Any]:
    return {
        "config": {k: _json_safe(v) for k, v in config.to_dict().items()},
        "aggregates": {k: _json_safe(v) for k, v in stats.aggregates().items()},
        "histograms": {
            "iterations": stats.iteration_histogram,
            "time_us": stats.time_histogram,
        },
    }


def write_summary_json(stats: BenchStats, config: BenchConfig, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(summary_dict(stats, config), f, indent=2)
        f.write("\n")
