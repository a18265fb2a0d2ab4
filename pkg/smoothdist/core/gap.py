"""
Generalized alternating projection between two polytope metrics.

The fixed point of a <- Pi_A(Pi_B(a)) gives the witness pair (a*, b*) and

    Lambda = E_A(b*) + E_B(a*) - |a* - b*|^2 / 2,

which is positive for disjoint bodies, zero under overlap and smooth along
rigid motions. Its pose gradient follows from the envelope argument: the
witness pair is stationary, so only the explicit pose dependence of E_A and
E_B contributes.
"""

import csv
import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize

from .errors import ConfigError, ConfigMismatch, MaxIterExceeded, NotConverged, ProjectionStalled
from .euclid import PAIR_MAX_ITER, PAIR_TOL, EuclidResult, euclid_pair
from .geometry import RigidPose, rotation_dof, rotation_matrix, torque
from .geometry import transform as transform_polytope
from .logger import get_logger
from .p2s import P2SMetric
from .p2s import transform as transform_metric

logger = get_logger(__name__)

PathLike = Union[str, Path]

DEFAULT_TOL = 1e-3
DEFAULT_MAX_ITER = 5000
DEFAULT_ANDERSON = 5
SWEEP_TOL = 1e-9
SWEEP_MAX_ITER = 50000
EUCLID_FD_STEP = 1e-5

SWEEP_COLUMNS = [
    "tau",
    "lambda",
    "dlambda_dtau",
    "euclid_dist",
    "euclid_fd_deriv",
    "iterations",
    "converged",
]


@dataclass
class WitnessResult:
    """Witness pair of the alternating iteration."""

    a_star: np.ndarray
    b_star: np.ndarray
    iterations: int
    converged: bool
    residual: float
    overlap: bool = False
    tol: float = DEFAULT_TOL
    history: Optional[List[float]] = None


@dataclass
class PoseGradient:
    """
    Derivative of Lambda w.r.t. world-frame pose perturbations of each body.

    Translations perturb t -> t + dt; rotations perturb R -> exp([w]x) R about
    the body origin (a scalar angle in 2-D, a 3-vector in 3-D).
    """

    translation_a: np.ndarray
    rotation_a: np.ndarray
    translation_b: np.ndarray
    rotation_b: np.ndarray

    @classmethod
    def zeros(cls, dim: int) -> "PoseGradient":
        dof = rotation_dof(dim)
        return cls(np.zeros(dim), np.zeros(dof), np.zeros(dim), np.zeros(dof))

    def as_vector(self, wrt: str = "all") -> np.ndarray:
        """Concatenate (translation, rotation) of body "a", "b" or "all"."""
        parts = {
            "a": [self.translation_a, self.rotation_a],
            "b": [self.translation_b, self.rotation_b],
        }
        if wrt == "all":
            return np.concatenate(parts["a"] + parts["b"])
        if wrt not in parts:
            raise ValueError(f"wrt must be 'a', 'b' or 'all', got {wrt!r}")
        return np.concatenate(parts[wrt])

    def along(
            self,
            twist_a: Tuple[np.ndarray, np.ndarray],
            twist_b: Tuple[np.ndarray, np.ndarray],
    ) -> float:
        """Directional derivative for (velocity, angular velocity) twists of both bodies."""
        va, wa = (np.atleast_1d(np.asarray(x, dtype=float)) for x in twist_a)
        vb, wb = (np.atleast_1d(np.asarray(x, dtype=float)) for x in twist_b)
        return float(
            self.translation_a @ va
            + self.rotation_a @ wa
            + self.translation_b @ vb
            + self.rotation_b @ wb
        )


@dataclass
class MetricResult:
    """Lambda with its witness pair, the Euclidean reference and an optional gradient."""

    value: float
    witness: WitnessResult
    euclid: EuclidResult
    gradient: Optional[PoseGradient] = None

    def to_dict(self) -> dict:
        out = {
            "lambda": self.value,
            "overlap": self.witness.overlap,
            "converged": self.witness.converged,
            "iterations": self.witness.iterations,
            "residual": self.witness.residual,
            "a_star": self.witness.a_star.tolist(),
            "b_star": self.witness.b_star.tolist(),
            "euclid_dist": self.euclid.distance,
        }
        if self.gradient is not None:
            out["gradient"] = {
                "translation_a": self.gradient.translation_a.tolist(),
                "rotation_a": self.gradient.rotation_a.tolist(),
                "translation_b": self.gradient.translation_b.tolist(),
                "rotation_b": self.gradient.rotation_b.tolist(),
            }
        return out


@dataclass
class DistanceOptions:
    """
    Solver settings for differentiable_distance.

    ``certify`` and ``anderson`` are passed to alternate; the Euclidean
    settings drive the reference pair that decides overlap and seeds a0.
    """

    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    with_gradient: bool = False
    diagnose_overlap: bool = False
    certify: bool = True
    anderson: int = DEFAULT_ANDERSON
    euclid_tol: float = PAIR_TOL
    euclid_max_iter: int = PAIR_MAX_ITER

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.anderson < 0:
            raise ValueError("anderson window must be nonnegative")
        if not self.euclid_tol > 0 or self.euclid_max_iter < 1:
            raise ValueError("euclid_tol must be positive and euclid_max_iter at least 1")

    def replace(self, **changes: Any) -> "DistanceOptions":
        return dataclasses.replace(self, **changes)


@dataclass
class SaddleDiagnostics:
    """Stationarity residuals and second-order certificates at a witness pair."""

    r_a: float
    r_b: float
    inner_eigenvalues: np.ndarray
    outer_eigenvalues: np.ndarray

    @property
    def inner_negative_definite(self) -> bool:
        return bool(np.all(self.inner_eigenvalues < 0))

    @property
    def outer_positive_definite(self) -> bool:
        return bool(np.all(self.outer_eigenvalues > 0))


@dataclass
class SandwichBounds:
    """upper = E_B(a0*) and lower = min_a E_A(a) + E_B(a), bracketing Lambda."""

    upper: float
    lower: float

    def holds(self, value: float, atol: float = 0.0) -> bool:
        return self.lower - atol <= value <= self.upper + atol


@dataclass(frozen=True, eq=False)
class MotionSpec:
    """Constant-rate rigid motion: rotation about the body origin plus a drift."""

    base: RigidPose
    angular_rate: float = 0.0
    axis: Optional[Sequence[float]] = None
    linear_velocity: Optional[Sequence[float]] = None

    def __post_init__(self) -> None:
        dim = self.base.dim
        if dim == 2:
            axis = np.ones(1)
        else:
            axis = np.asarray(self.axis if self.axis is not None else (0.0, 0.0, 1.0), dtype=float)
            norm = np.linalg.norm(axis)
            if axis.shape != (3,) or norm == 0:
                raise ValueError("3-D motions need a nonzero 3-vector axis")
            axis = axis / norm
        velocity = np.zeros(dim) if self.linear_velocity is None else np.asarray(
            self.linear_velocity, dtype=float
        )
        if velocity.shape != (dim,):
            raise ValueError(f"linear velocity must have dimension {dim}")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "linear_velocity", velocity)

    @property
    def omega(self) -> np.ndarray:
        """World-frame angular velocity (a 1-vector in 2-D)."""
        return self.angular_rate * np.asarray(self.axis)

    def pose(self, tau: float) -> RigidPose:
        delta = rotation_matrix(self.base.dim, tau * self.omega)
        return RigidPose(
            delta @ self.base.rotation,
            self.base.translation + tau * np.asarray(self.linear_velocity),
        )

    def twist(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.linear_velocity), self.omega


@dataclass(frozen=True, eq=False)
class PosePath:
    """Poses of both bodies as smooth functions of tau in [0, 1]."""

    motion_a: MotionSpec
    motion_b: MotionSpec

    def poses(self, tau: float) -> Tuple[RigidPose, RigidPose]:
        return self.motion_a.pose(tau), self.motion_b.pose(tau)


@dataclass
class SweepRow:
    tau: float
    value: float
    dvalue_dtau: float
    euclid_dist: float
    euclid_fd_deriv: float
    iterations: int
    converged: bool
    error: Optional[str] = None

    def as_csv_row(self) -> dict:
        return {
            "tau": repr(self.tau),
            "lambda": repr(self.value),
            "dlambda_dtau": repr(self.dvalue_dtau),
            "euclid_dist": repr(self.euclid_dist),
            "euclid_fd_deriv": repr(self.euclid_fd_deriv),
            "iterations": self.iterations,
            "converged": str(self.converged).lower(),
        }


def _certified(metric_a: P2SMetric, metric_b: P2SMetric, a: np.ndarray, step: float, tol: float) -> bool:
    # Banach a-posteriori bound: |a - a*| <= q / (1 - q) * step
    if step == 0.0:
        return True
    q = contraction_factor(metric_a, metric_b, a)
    return q < 1.0 and step * q / (1.0 - q) < tol


def _anderson_mix(points: List[np.ndarray], images: List[np.ndarray]) -> np.ndarray:
    """Anderson extrapolation from recent iterates x_i and their images F(x_i)."""
    xs = np.stack(points, axis=1)
    fs = np.stack(images, axis=1)
    residuals = fs - xs
    d_res = np.diff(residuals, axis=1)
    d_img = np.diff(fs, axis=1)
    gamma, *_ = np.linalg.lstsq(d_res, residuals[:, -1], rcond=None)
    return fs[:, -1] - d_img @ gamma


def alternate(
        metric_a: P2SMetric,
        metric_b: P2SMetric,
        a0: np.ndarray,
        tol: float = DEFAULT_TOL,
        max_iter: int = DEFAULT_MAX_ITER,
        record: bool = False,
        certify: bool = False,
        anderson: int = 0,
) -> WitnessResult:
    """
    Iterate a <- Pi_A(Pi_B(a)) until the step drops below ``tol``.

    With ``certify`` a small step is only accepted once the local contraction
    factor q also bounds the distance to the fixed point, step * q / (1 - q),
    below ``tol``. Near contact q approaches 1 and a small step alone says
    little about the error.

    With ``anderson`` > 0 the iterate is extrapolated from that many previous
    steps. A candidate whose step is larger than the current one is dropped
    and the plain iteration resumes with a cleared history.

    Args:
        metric_a: Metric of A (world frame)
        metric_b: Metric of B (world frame)
        a0: Starting point
        tol: Step tolerance |a[k+1] - a[k]|
        max_iter: Iteration budget
        record: Keep the step history
        certify: Also require the a-posteriori error bound below ``tol``
        anderson: Anderson window (0 for the plain iteration)

    Returns:
        WitnessResult with b* = Pi_B(a*)

    Raises:
        MaxIterExceeded: With the last iterate and step
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if anderson < 0:
        raise ValueError("anderson window must be nonnegative")

    def fixed_map(x: np.ndarray) -> np.ndarray:
        return metric_a.project(metric_b.project(x))

    a = np.asarray(a0, dtype=float).copy()
    image = fixed_map(a)
    points, images = [a], [image]
    history: Optional[List[float]] = [] if record else None
    step = float("inf")
    for iteration in range(1, max_iter + 1):
        step = float(np.linalg.norm(image - a))
        if history is not None:
            history.append(step)
        if step < tol and (not certify or _certified(metric_a, metric_b, image, step, tol)):
            logger.debug("alternation converged in %d iterations (step %.3e)", iteration, step)
            return WitnessResult(
                a_star=image,
                b_star=metric_b.project(image),
                iterations=iteration,
                converged=True,
                residual=step,
                tol=tol,
                history=history,
            )
        if iteration == max_iter:
            break

        a_next = image
        image_next = None
        if anderson and len(points) > 1:
            candidate = _anderson_mix(points, images)
            candidate_image = fixed_map(candidate)
            if np.linalg.norm(candidate_image - candidate) <= step:
                a_next, image_next = candidate, candidate_image
            else:
                points, images = [], []
        if image_next is None:
            image_next = fixed_map(a_next)
        a, image = a_next, image_next
        if anderson:
            points = (points + [a])[-(anderson + 1):]
            images = (images + [image])[-(anderson + 1):]

    raise MaxIterExceeded(
        f"alternating projection did not converge below {tol:g} in {max_iter} iterations",
        last_iterate=image,
        residual=step,
        iterations=max_iter,
    )


def lambda_value(metric_a: P2SMetric, metric_b: P2SMetric, a_star: np.ndarray, b_star: np.ndarray) -> float:
    """E_A(b*) + E_B(a*) - |a* - b*|^2 / 2."""
    gap = a_star - b_star
    return metric_a.value(b_star) + metric_b.value(a_star) - 0.5 * float(gap @ gap)


def _check_dims(metric_a: P2SMetric, metric_b: P2SMetric, pose_a: RigidPose, pose_b: RigidPose) -> None:
    dims = {metric_a.dim, metric_b.dim, pose_a.dim, pose_b.dim}
    if len(dims) != 1:
        raise ConfigMismatch(
            f"dimension mismatch: A={metric_a.dim}, B={metric_b.dim}, "
            f"pose A={pose_a.dim}, pose B={pose_b.dim}"
        )


def _diagnose_overlap(metric_a: P2SMetric, metric_b: P2SMetric, start: np.ndarray, options: DistanceOptions) -> None:
    try:
        result = alternate(metric_a, metric_b, start, options.tol, options.max_iter, record=True)
        logger.info("overlap diagnostic: alternation settled in %d iterations", result.iterations)
    except MaxIterExceeded as e:
        logger.info("overlap diagnostic: no settling after %d iterations (step %.3e)", e.iterations, e.residual)


def differentiable_distance(
        metric_a: P2SMetric,
        metric_b: P2SMetric,
        pose_a: RigidPose,
        pose_b: RigidPose,
        options: Optional[DistanceOptions] = None,
) -> MetricResult:
    """
    Lambda between two posed bodies.

    The bodies are moved into the world frame, the Euclidean reference
    decides overlap (Lambda = 0 with a common point as witness) and otherwise
    seeds the alternation at the closest point on A.

    Args:
        metric_a: Body-frame metric of A
        metric_b: Body-frame metric of B
        pose_a: Pose of A
        pose_b: Pose of B
        options: Solver settings

    Returns:
        MetricResult

    Raises:
        ConfigMismatch: On dimension disagreement
        MaxIterExceeded: If the alternation does not converge
    """
    options = options or DistanceOptions()
    _check_dims(metric_a, metric_b, pose_a, pose_b)
    world_a = transform_metric(metric_a, pose_a)
    world_b = transform_metric(metric_b, pose_b)

    try:
        euclid = euclid_pair(
            world_a.polytope, world_b.polytope, tol=options.euclid_tol, max_iter=options.euclid_max_iter
        )
    except MaxIterExceeded as e:
        logger.warning("Euclidean reference stalled; seeding from its last pair")
        xa, xb = e.last_iterate
        euclid = EuclidResult(
            distance=float(np.linalg.norm(xa - xb)),
            a0_star=xa,
            b0_star=xb,
            overlap=False,
            iterations=e.iterations,
            residual=e.residual,
        )

    if euclid.overlap:
        point = euclid.certificate
        if options.diagnose_overlap:
            _diagnose_overlap(world_a, world_b, point, options)
        witness = WitnessResult(
            a_star=point.copy(),
            b_star=point.copy(),
            iterations=0,
            converged=True,
            residual=0.0,
            overlap=True,
            tol=options.tol,
        )
        gradient = PoseGradient.zeros(metric_a.dim) if options.with_gradient else None
        return MetricResult(value=0.0, witness=witness, euclid=euclid, gradient=gradient)

    witness = alternate(
        world_a,
        world_b,
        euclid.a0_star,
        options.tol,
        options.max_iter,
        certify=options.certify,
        anderson=options.anderson,
    )
    value = lambda_value(world_a, world_b, witness.a_star, witness.b_star)
    gradient = None
    if options.with_gradient:
        gradient = _envelope_gradient(world_a, world_b, pose_a, pose_b, witness)
    return MetricResult(value=value, witness=witness, euclid=euclid, gradient=gradient)


def saddle_residuals(metric_a: P2SMetric, metric_b: P2SMetric, witness: WitnessResult) -> SaddleDiagnostics:
    """
    Stationarity residuals and Hessian certificates of the min-max pair.

    r_a = |Pi_A(b*) - a*| and r_b = |Pi_B(a*) - b*|. The inner certificate is
    Hess E_A(b*) - I (negative definite); the outer one is
    Hess E_B(a*) - I - (Hess E_A(b*) - I)^-1 (positive definite).
    """
    a, b = witness.a_star, witness.b_star
    r_a = float(np.linalg.norm(metric_a.project(b) - a))
    r_b = float(np.linalg.norm(metric_b.project(a) - b))
    eye = np.eye(metric_a.dim)
    inner = metric_a.hessian(b) - eye
    outer = metric_b.hessian(a) - eye - np.linalg.inv(inner)
    outer = 0.5 * (outer + outer.T)
    return SaddleDiagnostics(
        r_a=r_a,
        r_b=r_b,
        inner_eigenvalues=np.linalg.eigvalsh(inner),
        outer_eigenvalues=np.linalg.eigvalsh(outer),
    )


def _envelope_gradient(
        world_a: P2SMetric,
        world_b: P2SMetric,
        pose_a: RigidPose,
        pose_b: RigidPose,
        witness: WitnessResult,
) -> PoseGradient:
    # E_A(b*) depends on pose A through T_A^-1 b*, likewise E_B(a*)
    grad_a = world_a.gradient(witness.b_star)
    grad_b = world_b.gradient(witness.a_star)
    return PoseGradient(
        translation_a=-grad_a,
        rotation_a=torque(grad_a, witness.b_star - pose_a.translation),
        translation_b=-grad_b,
        rotation_b=torque(grad_b, witness.a_star - pose_b.translation),
    )


def metric_gradient(
        metric_a: P2SMetric,
        metric_b: P2SMetric,
        pose_a: RigidPose,
        pose_b: RigidPose,
        witness: WitnessResult,
) -> PoseGradient:
    """
    Envelope gradient of Lambda with respect to both poses.

    Args:
        metric_a: Body-frame metric of A
        metric_b: Body-frame metric of B
        pose_a: Pose of A
        pose_b: Pose of B
        witness: Witness pair computed for these poses

    Returns:
        PoseGradient (zero under overlap, where Lambda vanishes identically)

    Raises:
        NotConverged: If the witness did not converge to its tolerance
        ConfigMismatch: On dimension disagreement
    """
    _check_dims(metric_a, metric_b, pose_a, pose_b)
    if not witness.converged or witness.residual > witness.tol:
        raise NotConverged(
            f"witness residual {witness.residual:.3e} exceeds tolerance {witness.tol:.3e}"
        )
    if witness.overlap:
        return PoseGradient.zeros(metric_a.dim)
    return _envelope_gradient(
        transform_metric(metric_a, pose_a),
        transform_metric(metric_b, pose_b),
        pose_a,
        pose_b,
        witness,
    )


def contraction_factor(metric_a: P2SMetric, metric_b: P2SMetric, a: np.ndarray) -> float:
    """Spectral norm of dF/da = (I - Hess E_A(Pi_B(a))) (I - Hess E_B(a))."""
    eye = np.eye(metric_a.dim)
    b = metric_b.project(a)
    jac = (eye - metric_a.hessian(b)) @ (eye - metric_b.hessian(a))
    return float(np.linalg.norm(jac, 2))


def sandwich_bounds(metric_a: P2SMetric, metric_b: P2SMetric, euclid: EuclidResult) -> SandwichBounds:
    """
    Both sides of E_B(a0*) >= Lambda >= min_a E_A(a) + E_B(a).

    The lower side is minimized with BFGS from the midpoint of the Euclidean
    closest pair.
    """
    upper = metric_b.value(euclid.a0_star)

    def total(p: np.ndarray) -> Tuple[float, np.ndarray]:
        va, ga, _ = metric_a.strict_batch(p, hessian=False)
        vb, gb, _ = metric_b.strict_batch(p, hessian=False)
        return float(va[0] + vb[0]), ga[0] + gb[0]

    start = 0.5 * (euclid.a0_star + euclid.b0_star)
    result = minimize(total, start, jac=True, method="BFGS", options={"gtol": 1e-12})
    return SandwichBounds(upper=upper, lower=float(result.fun))


def _euclid_distance_at(
        metric_a: P2SMetric,
        metric_b: P2SMetric,
        path: PosePath,
        tau: float,
        options: DistanceOptions,
) -> float:
    pose_a, pose_b = path.poses(tau)
    result = euclid_pair(
        transform_polytope(metric_a.polytope, pose_a),
        transform_polytope(metric_b.polytope, pose_b),
        tol=options.euclid_tol,
        max_iter=options.euclid_max_iter,
    )
    return result.distance


def sweep(
        metric_a: P2SMetric,
        metric_b: P2SMetric,
        path: PosePath,
        n_samples: int,
        options: Optional[DistanceOptions] = None,
) -> List[SweepRow]:
    """
    Evaluate Lambda, dLambda/dtau and the Euclidean distance along a path.

    tau is sampled uniformly on [0, 1]. The Euclidean derivative is a central
    difference with step 1e-5. A sample whose solve fails is flagged and the
    sweep continues.

    Without options the witnesses are solved to SWEEP_TOL within
    SWEEP_MAX_ITER iterations, far below the tau spacing.

    Args:
        metric_a: Body-frame metric of A
        metric_b: Body-frame metric of B
        path: Pose path
        n_samples: Number of tau values (at least 2)
        options: Solver settings (gradient always computed)

    Returns:
        One SweepRow per tau
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    base = options or DistanceOptions(tol=SWEEP_TOL, max_iter=SWEEP_MAX_ITER)
    opts = base.replace(with_gradient=True)
    twist_a, twist_b = path.motion_a.twist(), path.motion_b.twist()
    rows: List[SweepRow] = []
    for tau in np.linspace(0.0, 1.0, n_samples):
        tau = float(tau)
        pose_a, pose_b = path.poses(tau)
        try:
            result = differentiable_distance(metric_a, metric_b, pose_a, pose_b, opts)
            plus = _euclid_distance_at(metric_a, metric_b, path, tau + EUCLID_FD_STEP, opts)
            minus = _euclid_distance_at(metric_a, metric_b, path, tau - EUCLID_FD_STEP, opts)
        except (MaxIterExceeded, ProjectionStalled, NotConverged) as e:
            logger.warning("sweep sample tau=%.6f failed: %s", tau, e)
            rows.append(
                SweepRow(
                    tau=tau,
                    value=float("nan"),
                    dvalue_dtau=float("nan"),
                    euclid_dist=float("nan"),
                    euclid_fd_deriv=float("nan"),
                    iterations=getattr(e, "iterations", 0),
                    converged=False,
                    error=str(e),
                )
            )
            continue
        rows.append(
            SweepRow(
                tau=tau,
                value=result.value,
                dvalue_dtau=result.gradient.along(twist_a, twist_b),
                euclid_dist=result.euclid.distance,
                euclid_fd_deriv=(plus - minus) / (2 * EUCLID_FD_STEP),
                iterations=result.witness.iterations,
                converged=result.witness.converged,
            )
        )
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], path: PathLike) -> None:
    """Write sweep rows as UTF-8 CSV with the standard column set."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_csv_row())


def motion_from_dict(data: dict) -> MotionSpec:
    """
    Decode one body of a path document.

    Keys: "translation" (required), "rotvec" (angle in 2-D), "angular_rate",
    "axis" (3-D) and "linear_velocity".
    """
    try:
        translation = np.asarray(data["translation"], dtype=float)
        rotvec = data.get("rotvec", np.zeros(rotation_dof(translation.shape[0])))
        base = RigidPose.from_rotvec(rotvec, translation)
        return MotionSpec(
            base=base,
            angular_rate=float(data.get("angular_rate", 0.0)),
            axis=data.get("axis"),
            linear_velocity=data.get("linear_velocity"),
        )
    except (KeyError, TypeError) as e:
        raise ConfigError(f"malformed motion document: {e}") from e


def path_from_dict(data: dict) -> PosePath:
    """Decode a path document {"a": motion, "b": motion}."""
    try:
        return PosePath(motion_from_dict(data["a"]), motion_from_dict(data["b"]))
    except KeyError as e:
        raise ConfigError(f"path document is missing body {e}") from e
