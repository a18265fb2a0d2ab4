"""
Point-to-set metrics for half-space polytopes.

The weak metric sums the basic kernel over the facets,

    e(p) = sum_i W_i Phi(u_i^T p + v_i),

and the strict metric convexifies it with rho(p) = 0.5 (|p - p_c|^2 - R^2):

    E(p) = A + sqrt(A^2 + B^2),   A = eps * rho(p),  B = sigma * e(p).

E vanishes exactly on the polytope, is strictly convex outside it and, for
calibrated (eps, sigma), has a Hessian below the identity, which makes the
generalized projection p - grad E(p) a contraction ingredient.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import CalibrationFailed, ConfigError, InvalidParams, NumericalDegeneracy
from .geometry import HalfSpacePolytope, RigidPose, load_polytope, max_simultaneous_positive
from .geometry import transform as transform_polytope
from .geometry.polytope import MEMBERSHIP_TOL
from .logger import get_logger
from .phi import PhiParams, kernel
from .validation import ValidationReport

logger = get_logger(__name__)

PathLike = Union[str, Path]
Evaluation = Tuple[np.ndarray, np.ndarray, np.ndarray]

DEGENERACY_TOL = 1e-30
WEIGHT_MARGIN = 0.2
SAMPLE_BOX_FACTOR = 3.0


def uniform_weights(n_halfspaces: int, max_positive: int, margin: float = WEIGHT_MARGIN) -> np.ndarray:
    """W_i = 1 / (m + margin) for every facet."""
    if margin <= 0:
        raise InvalidParams("weight margin must be positive")
    return np.full(n_halfspaces, 1.0 / (max_positive + margin))


@dataclass(frozen=True, eq=False)
class P2SMetric:
    """Strict point-to-set metric of one polytope. Immutable once built."""

    polytope: HalfSpacePolytope
    phi: PhiParams
    weights: np.ndarray
    eps: float
    sigma: float

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.shape[0] != self.polytope.n_halfspaces:
            raise InvalidParams(
                f"{weights.shape[0]} weights for {self.polytope.n_halfspaces} half-spaces"
            )
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise InvalidParams("weights must be positive and finite")
        if not self.eps > 0:
            raise InvalidParams(f"eps must be positive, got {self.eps}")
        if not self.sigma > 0:
            raise InvalidParams(f"sigma must be positive, got {self.sigma}")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "eps", float(self.eps))
        object.__setattr__(self, "sigma", float(self.sigma))

    @classmethod
    def build(
            cls,
            polytope: HalfSpacePolytope,
            phi: PhiParams,
            eps: float,
            sigma: float,
            weights: Optional[Sequence[float]] = None,
            weight_margin: float = WEIGHT_MARGIN,
            method: str = "enumerate",
    ) -> "P2SMetric":
        """
        Build a metric, deriving the weights from the polytope when not given.

        Explicit weights are checked against the simultaneous-positive bound:
        the m largest weights must sum below 1, otherwise a warning is logged.

        Args:
            polytope: Regular polytope
            phi: Kernel parameters
            eps: Scale of rho
            sigma: Scale of the weak metric
            weights: Optional per-facet weights (a scalar broadcasts)
            weight_margin: Constant in W_i = 1/(m + margin)
            method: Subset search used for m ("enumerate" or "milp")

        Returns:
            P2SMetric
        """
        m = max_simultaneous_positive(polytope, method=method)
        if weights is None:
            w = uniform_weights(polytope.n_halfspaces, m, weight_margin)
        else:
            w = np.broadcast_to(np.asarray(weights, dtype=float), (polytope.n_halfspaces,)).copy()
            worst = float(np.sort(w)[::-1][:m].sum())
            if worst >= 1.0:
                logger.warning(
                    "weights reach %.4f over %d simultaneously positive facets; "
                    "the Hessian bound is not guaranteed",
                    worst,
                    m,
                )
        logger.debug("metric weights %s (m=%d)", w[0] if np.ptp(w) == 0 else w, m)
        return cls(polytope=polytope, phi=phi, weights=w, eps=eps, sigma=sigma)

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @property
    def center(self) -> np.ndarray:
        return self.polytope.cover_center

    @property
    def radius(self) -> float:
        return self.polytope.cover_radius

    def with_params(self, eps: Optional[float] = None, sigma: Optional[float] = None) -> "P2SMetric":
        return P2SMetric(
            polytope=self.polytope,
            phi=self.phi,
            weights=self.weights,
            eps=self.eps if eps is None else eps,
            sigma=self.sigma if sigma is None else sigma,
        )

    def _points(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dim:
            raise ValueError(f"points have dimension {pts.shape[1]}, metric has {self.dim}")
        return pts

    # batched evaluation ----------------------------------------------------

    def weak_batch(self, points: np.ndarray, hessian: bool = True) -> Evaluation:
        """Weak metric value, gradient and (optionally) Hessian for (N, n) points."""
        pts = self._points(points)
        s = self.polytope.residuals(pts)
        value, d1, d2 = kernel(self.phi).evaluate(s)
        normals = self.polytope.normals
        e = (value * self.weights).sum(axis=1)
        grad = (d1 * self.weights) @ normals
        if not hessian:
            return e, grad, np.empty((pts.shape[0], 0, 0))
        hess = np.einsum("nm,mi,mj->nij", d2 * self.weights, normals, normals)
        return e, grad, hess

    def rho_batch(self, points: np.ndarray) -> Evaluation:
        pts = self._points(points)
        diff = pts - self.center
        value = 0.5 * (np.einsum("ni,ni->n", diff, diff) - self.radius ** 2)
        hess = np.broadcast_to(np.eye(self.dim), (pts.shape[0], self.dim, self.dim))
        return value, diff, hess

    def strict_batch(self, points: np.ndarray, hessian: bool = True) -> Evaluation:
        """
        Strict metric value, gradient and Hessian for (N, n) points.

        Points inside the polytope (1e-12 boundary tolerance) return zeros
        without evaluating the convexification.

        Raises:
            NumericalDegeneracy: If sqrt(A^2 + B^2) collapses outside the set
        """
        pts = self._points(points)
        n_pts, n = pts.shape
        value = np.zeros(n_pts)
        grad = np.zeros((n_pts, n))
        hess = np.zeros((n_pts, n, n)) if hessian else np.empty((n_pts, 0, 0))

        outside = np.max(self.polytope.residuals(pts), axis=1) > MEMBERSHIP_TOL
        if not np.any(outside):
            return value, grad, hess

        q = pts[outside]
        e, ge, he = self.weak_batch(q, hessian=hessian)
        r, gr, _ = self.rho_batch(q)
        a = self.eps * r
        b = self.sigma * e
        grad_a = self.eps * gr
        grad_b = self.sigma * ge
        v = np.hypot(a, b)
        if np.any(v < DEGENERACY_TOL):
            raise NumericalDegeneracy(
                f"sqrt(A^2 + B^2) = {v.min():.3e} outside the set; metric parameters are corrupted"
            )
        # A + V and 1 + A/V without cancellation when A < 0
        neg = a < 0
        value_out = np.where(neg, b ** 2 / (v - a), a + v)
        scale = np.where(neg, b ** 2 / ((v - a) * v), 1.0 + a / v)
        value[outside] = value_out
        grad[outside] = scale[:, None] * grad_a + (b / v)[:, None] * grad_b

        if hessian:
            w = b[:, None] * grad_a - a[:, None] * grad_b
            hess[outside] = (
                (scale * self.eps)[:, None, None] * np.eye(n)
                + (b / v)[:, None, None] * self.sigma * he
                + np.einsum("ni,nj->nij", w, w) / (v ** 3)[:, None, None]
            )
        return value, grad, hess

    # single points ---------------------------------------------------------

    def weak_e(self, p: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
        """Weak metric (value, gradient, Hessian) at one point."""
        value, grad, hess = self.weak_batch(p)
        return float(value[0]), grad[0], hess[0]

    def rho(self, p: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
        """Auxiliary function 0.5 (|p - p_c|^2 - R^2), its gradient and Hessian."""
        value, grad, hess = self.rho_batch(p)
        return float(value[0]), grad[0], np.array(hess[0])

    def strict_E(self, p: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
        """Strict metric (value, gradient, Hessian) at one point."""
        value, grad, hess = self.strict_batch(p)
        return float(value[0]), grad[0], hess[0]

    def value(self, p: np.ndarray) -> float:
        return float(self.strict_batch(p, hessian=False)[0][0])

    def gradient(self, p: np.ndarray) -> np.ndarray:
        return self.strict_batch(p, hessian=False)[1][0]

    def hessian(self, p: np.ndarray) -> np.ndarray:
        return self.strict_batch(p)[2][0]

    def project(self, p: np.ndarray) -> np.ndarray:
        """Generalized projection p - grad E(p); the identity on the set."""
        p = np.asarray(p, dtype=float)
        return p - self.gradient(p)


def weak_e(metric: P2SMetric, p: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    return metric.weak_e(p)


def rho(metric: P2SMetric, p: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    return metric.rho(p)


def strict_E(metric: P2SMetric, p: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    return metric.strict_E(p)


def project(metric: P2SMetric, p: np.ndarray) -> np.ndarray:
    return metric.project(p)


def transform(metric: P2SMetric, pose: RigidPose) -> P2SMetric:
    """
    Metric of the rigidly moved body: E_moved(p) = E(pose^-1 p).

    Facets and cover ball move with the pose; weights, eps and sigma do not.
    """
    return P2SMetric(
        polytope=transform_polytope(metric.polytope, pose),
        phi=metric.phi,
        weights=metric.weights,
        eps=metric.eps,
        sigma=metric.sigma,
    )


def hessian_spectrum(metric: P2SMetric, points: np.ndarray) -> np.ndarray:
    """Eigenvalues (ascending) of the strict-metric Hessian at each point, shape (N, n)."""
    _, _, hess = metric.strict_batch(points)
    return np.linalg.eigvalsh(hess)


def sample_box(metric: P2SMetric, n_samples: int, seed: Optional[int] = None) -> np.ndarray:
    """Uniform samples in the box of half-width 3R around the cover center."""
    rng = np.random.default_rng(seed)
    half = SAMPLE_BOX_FACTOR * metric.radius
    return metric.center + rng.uniform(-half, half, size=(n_samples, metric.dim))


def max_spectral_norm(metric: P2SMetric, points: np.ndarray, chunk: int = 2000) -> float:
    """Largest |eigenvalue| of the Hessian over the given points."""
    worst = 0.0
    for start in range(0, points.shape[0], chunk):
        eig = hessian_spectrum(metric, points[start:start + chunk])
        worst = max(worst, float(np.max(np.abs(eig))))
    return worst


def convexification_bound(metric: P2SMetric, v_min: float) -> float:
    """
    Closed-form Hessian bound alpha + (3 + sqrt(A_min^2 + B_min^2)/V_min) sqrt(alpha^2 + beta^2)
    with alpha = eps, beta = sigma, A_min = -eps R^2 / 2 and B_min = 0.
    """
    a_min = -0.5 * metric.eps * metric.radius ** 2
    ratio = abs(a_min) / v_min if v_min > 0 else float("inf")
    return metric.eps + (3.0 + ratio) * float(np.hypot(metric.eps, metric.sigma))


def validate_hessian_bounds(
        metric: P2SMetric,
        n_samples: int = 10000,
        seed: Optional[int] = 0,
        chunk: int = 2000,
) -> ValidationReport:
    """
    Randomized check of the metric properties in a 3R box around the cover center.

    Checks that E >= 0, that E = 0 exactly on the polytope, that the Hessian is
    zero inside, positive definite outside and of spectral norm below 1. The
    closed-form convexification bound is evaluated with a sampled V_min and
    reported in ``info`` only.

    Args:
        metric: Metric to check
        n_samples: Number of sample points
        seed: Sampler seed
        chunk: Points per batched evaluation

    Returns:
        ValidationReport
    """
    points = sample_box(metric, n_samples, seed)
    report = ValidationReport(
        title=f"metric eps={metric.eps:g} sigma={metric.sigma:g} ({n_samples} samples)"
    )
    negative = mismatched = interior_nonzero = not_pd = too_large = 0
    max_norm = 0.0
    min_outside_eig = float("inf")
    v_min = float("inf")
    n_inside = 0

    for start in range(0, n_samples, chunk):
        pts = points[start:start + chunk]
        value, grad, hess = metric.strict_batch(pts)
        inside = np.max(metric.polytope.residuals(pts), axis=1) <= MEMBERSHIP_TOL
        n_inside += int(inside.sum())
        negative += int(np.sum(value < 0))
        mismatched += int(np.sum((value == 0) != inside))
        interior_nonzero += int(np.sum(np.any(hess[inside] != 0, axis=(1, 2))))

        eig = np.linalg.eigvalsh(hess)
        max_norm = max(max_norm, float(np.max(np.abs(eig))))
        too_large += int(np.sum(np.max(np.abs(eig), axis=1) >= 1.0))
        if np.any(~inside):
            out_eig = eig[~inside, 0]
            min_outside_eig = min(min_outside_eig, float(out_eig.min()))
            not_pd += int(np.sum(out_eig <= 0))

        rho_value, _, _ = metric.rho_batch(pts)
        e_value, _, _ = metric.weak_batch(pts, hessian=False)
        v = np.hypot(metric.eps * rho_value, metric.sigma * e_value)
        v_min = min(v_min, float(v.min()))

    report.add("nonnegative", negative == 0, "E >= 0 on the sample", negative)
    report.add("zero_iff_member", mismatched == 0, "E = 0 exactly on the polytope", mismatched)
    report.add(
        "interior_hessian_zero",
        interior_nonzero == 0,
        f"Hessian vanishes at {n_inside} interior samples",
        interior_nonzero,
    )
    report.add(
        "positive_definite_outside",
        not_pd == 0,
        f"smallest outside eigenvalue {min_outside_eig:.3e}",
        not_pd,
    )
    report.add(
        "spectral_norm_below_one",
        too_large == 0,
        f"max spectral norm {max_norm:.6f}",
        too_large,
    )

    bound = convexification_bound(metric, v_min)
    report.info.update(
        {
            "eps": metric.eps,
            "sigma": metric.sigma,
            "samples": n_samples,
            "inside_samples": n_inside,
            "max_spectral_norm": max_norm,
            "min_outside_eigenvalue": min_outside_eig,
            "v_min_sampled": v_min,
            "closed_form_bound_sampled": bound,
            "closed_form_bound_below_one": bool(bound < 1.0),
        }
    )
    return report


def calibrate(
        polytope: HalfSpacePolytope,
        phi: PhiParams,
        weights: Optional[Sequence[float]] = None,
        target_margin: float = 0.0,
        eps0: float = 0.01,
        sigma_max: float = 1.0,
        grid_ratio: float = 0.995,
        grid_size: int = 600,
        n_samples: int = 10000,
        seed: Optional[int] = 0,
        weight_margin: float = WEIGHT_MARGIN,
        method: str = "enumerate",
) -> Tuple[float, float]:
    """
    Choose (eps, sigma) by randomized Hessian checks.

    eps is fixed at eps0 and sigma is binary-searched on the geometric grid
    sigma_max * grid_ratio^j for the largest value whose sampled spectral norm
    stays strictly below 1 - target_margin, the same strict bound
    validate_hessian_bounds applies.

    Args:
        polytope: Polytope to calibrate for
        phi: Kernel parameters
        weights: Per-facet weights (1/(m + weight_margin) rule when omitted)
        target_margin: Required distance of the spectral norm from 1
        eps0: Fixed eps
        sigma_max: Top of the sigma grid
        grid_ratio: Ratio between consecutive grid values
        grid_size: Number of grid values
        n_samples: Points in the randomized check
        seed: Sampler seed
        weight_margin: Constant of the uniform weight rule
        method: Subset search used for m ("enumerate" or "milp")

    Returns:
        (eps, sigma)

    Raises:
        CalibrationFailed: For degenerate requests or when no grid value passes
    """
    if not eps0 > 0 or not sigma_max > 0:
        raise CalibrationFailed(
            f"eps={eps0} and sigma={sigma_max} do not define a strict metric; both must be positive"
        )
    if not 0.0 <= target_margin < 1.0:
        raise CalibrationFailed(f"target margin {target_margin} outside [0, 1)")

    metric = P2SMetric.build(
        polytope, phi, eps=eps0, sigma=sigma_max, weights=weights, weight_margin=weight_margin, method=method
    )
    points = sample_box(metric, n_samples, seed)
    limit = 1.0 - target_margin
    grid = sigma_max * grid_ratio ** np.arange(grid_size)

    def passes(j: int) -> bool:
        norm = max_spectral_norm(metric.with_params(sigma=float(grid[j])), points)
        logger.debug("calibration sigma=%.6f norm=%.6f", grid[j], norm)
        return norm < limit

    if passes(0):
        return eps0, float(grid[0])
    if not passes(grid_size - 1):
        raise CalibrationFailed(
            f"no sigma in [{grid[-1]:.3g}, {grid[0]:.3g}] keeps the Hessian norm below "
            f"{limit:g} at eps={eps0}; weights are likely too large"
        )
    lo, hi = 0, grid_size - 1  # grid[lo] fails, grid[hi] passes
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if passes(mid):
            hi = mid
        else:
            lo = mid
    logger.info("calibrated eps=%g sigma=%.6f", eps0, grid[hi])
    return eps0, float(grid[hi])


# metric configuration documents --------------------------------------------

def metric_to_dict(metric: P2SMetric, polytope_path: PathLike) -> Dict[str, Any]:
    return {
        "polytope": str(polytope_path),
        "h": metric.phi.h,
        "k": metric.phi.k,
        "eps": metric.eps,
        "sigma": metric.sigma,
        "weights": [float(w) for w in metric.weights],
    }


def metric_from_dict(data: Dict[str, Any], polytope: HalfSpacePolytope) -> P2SMetric:
    """
    Decode a metric document against an already loaded polytope.

    Raises:
        ConfigError: If keys are missing or malformed
    """
    try:
        phi = PhiParams(h=float(data["h"]), k=int(data["k"]))
        weights = data.get("weights")
        eps = float(data["eps"])
        sigma = float(data["sigma"])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed metric document: {e}") from e
    if weights is None:
        return P2SMetric.build(polytope, phi, eps=eps, sigma=sigma)
    return P2SMetric(polytope=polytope, phi=phi, weights=weights, eps=eps, sigma=sigma)


def load_metric(path: PathLike) -> P2SMetric:
    """Read a metric JSON file; its polytope path is resolved relative to the file."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON: {e}") from e
    if "polytope" not in data:
        raise ConfigError(f"{path}: missing 'polytope' reference")
    polytope_path = Path(data["polytope"])
    if not polytope_path.is_absolute():
        polytope_path = path.parent / polytope_path
    return metric_from_dict(data, load_polytope(polytope_path))


def save_metric(metric: P2SMetric, path: PathLike, polytope_path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(metric_to_dict(metric, polytope_path), f, indent=2)
        f.write("\n")
