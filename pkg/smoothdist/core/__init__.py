"""
Core functionality for smoothdist.
"""

from .bench import BenchConfig, BenchStats, run_benchmark
from .config import Config
from .errors import (
    CalibrationFailed,
    ConfigError,
    ConfigMismatch,
    EmptyOrDegenerate,
    GenerationFailed,
    InvalidParams,
    MaxIterExceeded,
    NotConverged,
    NumericalDegeneracy,
    ProjectionStalled,
    SmoothDistError,
    Unbounded,
)
from .euclid import EuclidResult, euclid_pair, overlap_certificate, project_euclid
from .gap import (
    DistanceOptions,
    MetricResult,
    MotionSpec,
    PoseGradient,
    PosePath,
    WitnessResult,
    alternate,
    contraction_factor,
    differentiable_distance,
    metric_gradient,
    saddle_residuals,
    sandwich_bounds,
    sweep,
    write_sweep_csv,
)
from .logger import get_logger, setup_logger
from .p2s import P2SMetric, calibrate, hessian_spectrum, validate_hessian_bounds
from .phi import BasicPhi, PhiParams, phi, phi_d1, phi_d2, validate_basic_p2s
from .validation import CheckResult, ValidationReport

__all__ = [
    "Config",
    "setup_logger",
    "get_logger",
    "SmoothDistError",
    "ConfigError",
    "EmptyOrDegenerate",
    "Unbounded",
    "GenerationFailed",
    "InvalidParams",
    "NumericalDegeneracy",
    "CalibrationFailed",
    "ConfigMismatch",
    "NotConverged",
    "MaxIterExceeded",
    "ProjectionStalled",
    "CheckResult",
    "ValidationReport",
    "PhiParams",
    "BasicPhi",
    "phi",
    "phi_d1",
    "phi_d2",
    "validate_basic_p2s",
    "P2SMetric",
    "calibrate",
    "hessian_spectrum",
    "validate_hessian_bounds",
    "EuclidResult",
    "project_euclid",
    "euclid_pair",
    "overlap_certificate",
    "WitnessResult",
    "MetricResult",
    "DistanceOptions",
    "PoseGradient",
    "MotionSpec",
    "PosePath",
    "alternate",
    "differentiable_distance",
    "saddle_residuals",
    "metric_gradient",
    "contraction_factor",
    "sandwich_bounds",
    "sweep",
    "write_sweep_csv",
    "BenchConfig",
    "BenchStats",
    "run_benchmark",
]
