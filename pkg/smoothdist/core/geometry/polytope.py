"""
H-representation convex polytopes {p : u_i^T p + v_i <= 0}.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import EmptyOrDegenerate, Unbounded
from ..logger import get_logger
from .enclosing import covering_ball, vertices
from .feasibility import (
    STRICT_MARGIN,
    is_bounded,
    max_positive_enumerate,
    max_positive_milp,
    max_slack,
)
from .pose import RigidPose

logger = get_logger(__name__)

MEMBERSHIP_TOL = 1e-12
UNIT_TOL = 1e-12
SUBSET_METHODS = ("enumerate", "milp")


@dataclass(frozen=True)
class HalfSpace:
    """Half-space u^T p + v <= 0 with unit direction u."""

    u: Tuple[float, ...]
    v: float

    @classmethod
    def normalized(cls, direction: Sequence[float], offset: float) -> "HalfSpace":
        """
        Build a half-space, rescaling (u, v) by 1/||u||.

        Raises:
            ValueError: If the direction is zero
        """
        u = np.asarray(direction, dtype=float)
        norm = float(np.linalg.norm(u))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("half-space direction must be nonzero and finite")
        return cls(tuple(float(x) for x in u / norm), float(offset) / norm)


@dataclass(frozen=True, eq=False)
class HalfSpacePolytope:
    """Regular convex polytope with a certified interior point and a strict covering ball."""

    normals: np.ndarray
    offsets: np.ndarray
    cover_center: np.ndarray
    cover_radius: float
    interior_point: np.ndarray
    interior_slack: float

    def __post_init__(self) -> None:
        for name in ("normals", "offsets", "cover_center", "interior_point"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def dim(self) -> int:
        return int(self.normals.shape[1])

    @property
    def n_halfspaces(self) -> int:
        return int(self.normals.shape[0])

    @property
    def halfspaces(self) -> List[HalfSpace]:
        return [
            HalfSpace(tuple(float(x) for x in u), float(v))
            for u, v in zip(self.normals, self.offsets)
        ]

    def residuals(self, points: np.ndarray) -> np.ndarray:
        """u_i^T p + v_i for a point (m,) or a batch (N, m)."""
        return np.asarray(points, dtype=float) @ self.normals.T + self.offsets

    def contains(self, point: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
        return contains(self, point, tol)

    def vertices(self) -> np.ndarray:
        return vertices(self.normals, self.offsets)


def _from_arrays(normals: np.ndarray, offsets: np.ndarray) -> HalfSpacePolytope:
    """Certify regularity and compactness, then attach the covering ball."""
    slack, point = max_slack(normals, offsets)
    if not slack > STRICT_MARGIN:
        raise EmptyOrDegenerate(
            f"no strict interior point (best slack {slack:.3e})"
        )
    if point is None or not is_bounded(normals, offsets):
        raise Unbounded("half-space system is not compact")

    center, radius = covering_ball(normals, offsets)
    return HalfSpacePolytope(
        normals=normals,
        offsets=offsets,
        cover_center=center,
        cover_radius=radius,
        interior_point=point,
        interior_slack=slack,
    )


def make_polytope(halfspaces: Sequence[Tuple[Sequence[float], float]], dim: int) -> HalfSpacePolytope:
    """
    Build a certified polytope from (direction, offset) pairs.

    Args:
        halfspaces: Pairs (u, v) describing u^T p + v <= 0
        dim: Ambient dimension

    Returns:
        HalfSpacePolytope with unit normals and a strict covering ball

    Raises:
        ValueError: On a zero direction or a dimension mismatch
        EmptyOrDegenerate: If no strict interior point exists
        Unbounded: If the set is not compact
    """
    if dim < 2:
        raise ValueError("dim must be at least 2")
    if not halfspaces:
        raise ValueError("at least one half-space is required")
    spaces = []
    for direction, offset in halfspaces:
        if len(direction) != dim:
            raise ValueError(f"direction {list(direction)} does not have dimension {dim}")
        spaces.append(HalfSpace.normalized(direction, offset))
    normals = np.array([hs.u for hs in spaces])
    offsets = np.array([hs.v for hs in spaces])
    return _from_arrays(normals, offsets)


def contains(polytope: HalfSpacePolytope, point: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
    """
    Membership test with a 1e-12 boundary tolerance.

    Raises:
        ValueError: On a dimension mismatch
    """
    point = np.asarray(point, dtype=float)
    if point.shape != (polytope.dim,):
        raise ValueError(f"point has shape {point.shape}, expected ({polytope.dim},)")
    return bool(np.max(polytope.residuals(point)) <= tol)


def transform(polytope: HalfSpacePolytope, pose: RigidPose) -> HalfSpacePolytope:
    """
    Rigidly move a polytope: u_i -> R u_i, v_i -> v_i - (R u_i)^T t.

    Raises:
        ValueError: On a dimension mismatch
    """
    if pose.dim != polytope.dim:
        raise ValueError(f"pose dimension {pose.dim} != polytope dimension {polytope.dim}")
    normals = polytope.normals @ pose.rotation.T
    offsets = polytope.offsets - normals @ pose.translation
    return HalfSpacePolytope(
        normals=normals,
        offsets=offsets,
        cover_center=pose.apply(polytope.cover_center),
        cover_radius=polytope.cover_radius,
        interior_point=pose.apply(polytope.interior_point),
        interior_slack=polytope.interior_slack,
    )


def max_simultaneous_positive(
        polytope: HalfSpacePolytope,
        method: str = "enumerate",
) -> int:
    """
    Largest number of inequalities that can be strictly positive at one point.

    Args:
        polytope: Regular polytope
        method: "enumerate" (exhaustive subsets) or "milp" (big-M program)

    Returns:
        m with 1 <= m <= n_halfspaces
    """
    count, _, _ = max_positive_subset(polytope, method)
    return count


def max_positive_subset(
        polytope: HalfSpacePolytope,
        method: str = "enumerate",
) -> Tuple[int, List[int], Optional[np.ndarray]]:
    """
    Like max_simultaneous_positive but also returns the maximizing subset
    and, for the MILP, a point where it is positive.
    """
    normals, offsets = polytope.normals, polytope.offsets
    anchor = polytope.interior_point
    if method == "enumerate":
        count, subset = max_positive_enumerate(normals, offsets, anchor)
        return count, subset, None
    if method == "milp":
        return max_positive_milp(normals, offsets, anchor)
    raise ValueError(f"unknown method {method!r}; use one of {', '.join(SUBSET_METHODS)}")
