"""
Exception hierarchy for the smoothdist library.
"""

from typing import Optional

import numpy as np


class SmoothDistError(Exception):
    """Base class for every error raised by smoothdist."""


class ConfigError(SmoothDistError, ValueError):
    """Invalid configuration value or file."""


class EmptyOrDegenerate(SmoothDistError, ValueError):
    """The half-space system has no strict interior point."""


class Unbounded(SmoothDistError, ValueError):
    """The half-space system does not describe a compact set."""


class GenerationFailed(SmoothDistError, RuntimeError):
    """Random polytope generation exhausted its rejection budget."""


class InvalidParams(SmoothDistError, ValueError):
    """Kernel parameters outside the admissible set."""


class NumericalDegeneracy(SmoothDistError, ArithmeticError):
    """A quantity that must stay away from zero collapsed."""


class CalibrationFailed(SmoothDistError, RuntimeError):
    """No (eps, sigma) pair on the search grid passed the Hessian checks."""


class ConfigMismatch(SmoothDistError, ValueError):
    """Bodies or poses disagree on the ambient dimension."""


class NotConverged(SmoothDistError, RuntimeError):
    """An operation needs a converged witness pair but got something else."""


class MaxIterExceeded(SmoothDistError, RuntimeError):
    """An iterative solver hit its iteration budget."""

    def __init__(
            self,
            message: str,
            last_iterate: Optional[np.ndarray] = None,
            residual: float = float("nan"),
            iterations: int = 0,
    ) -> None:
        """
        Initialize the error.

        Args:
            message: Human readable description
            last_iterate: Iterate held when the budget ran out
            residual: Step length of the last iteration
            iterations: Number of iterations performed
        """
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
        self.iterations = iterations


class ProjectionStalled(SmoothDistError, RuntimeError):
    """Dual coordinate ascent did not reach its tolerance."""

    def __init__(self, message: str, last_iterate: Optional[np.ndarray] = None) -> None:
        super().__init__(message)
        self.last_iterate = last_iterate
