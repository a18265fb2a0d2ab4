"""
Polytope constructors: random tangent-plane polytopes, boxes and simplices.
"""

from typing import Optional, Sequence

import numpy as np

from ..errors import EmptyOrDegenerate, GenerationFailed, Unbounded
from ..logger import get_logger
from .polytope import HalfSpacePolytope, _from_arrays

logger = get_logger(__name__)

RADIUS_RANGE = (0.3, 1.0)
CERTIFICATE_FACTOR = 1e-6


def random_polytope(
        seed: int,
        dim: int = 3,
        n_ineq: int = 10,
        scale: float = 1.0,
        center: Optional[Sequence[float]] = None,
        max_attempts: int = 100,
) -> HalfSpacePolytope:
    """
    Random regular polytope from planes tangent to spheres around a center.

    Directions are uniform on the sphere; plane i is tangent to the sphere of
    radius r_i ~ U[0.3, 1.0] * scale around the center, which is drawn from
    [-scale, scale]^dim unless given. Draws whose normals do not positively
    span the space are rejected and resampled.

    Args:
        seed: Seed of the numpy generator, output is deterministic per seed
        dim: Ambient dimension
        n_ineq: Number of inequalities, at least dim + 1
        scale: Length scale
        center: Optional fixed center
        max_attempts: Rejection budget

    Returns:
        Certified HalfSpacePolytope

    Raises:
        ValueError: If n_ineq < dim + 1 or scale <= 0
        GenerationFailed: If every attempt was rejected
    """
    if n_ineq < dim + 1:
        raise ValueError(f"n_ineq must be at least dim + 1 = {dim + 1}, got {n_ineq}")
    if scale <= 0:
        raise ValueError("scale must be positive")

    rng = np.random.default_rng(seed)
    for attempt in range(max_attempts):
        normals = rng.normal(size=(n_ineq, dim))
        normals /= np.linalg.norm(normals, axis=1, keepdims=True)
        radii = rng.uniform(*RADIUS_RANGE, size=n_ineq) * scale
        if center is None:
            origin = rng.uniform(-scale, scale, size=dim)
        else:
            origin = np.asarray(center, dtype=float)
        offsets = -(normals @ origin) - radii
        try:
            polytope = _from_arrays(normals, offsets)
        except (EmptyOrDegenerate, Unbounded) as e:
            logger.debug("seed %s attempt %s rejected: %s", seed, attempt, e)
            continue
        if polytope.interior_slack <= CERTIFICATE_FACTOR * scale:
            continue
        return polytope

    raise GenerationFailed(
        f"no regular polytope after {max_attempts} attempts "
        f"(dim={dim}, n_ineq={n_ineq}, scale={scale})"
    )


def box_polytope(
        half_extents: Sequence[float],
        center: Optional[Sequence[float]] = None,
) -> HalfSpacePolytope:
    """
    Axis-aligned box |p_j - c_j| <= half_extents[j].

    Args:
        half_extents: Positive half side lengths
        center: Box center (origin by default)
    """
    half = np.asarray(half_extents, dtype=float)
    dim = half.shape[0]
    origin = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
    eye = np.eye(dim)
    normals = np.vstack([eye, -eye])
    offsets = np.concatenate([-origin - half, origin - half])
    return _from_arrays(normals, offsets)


def regular_simplex(dim: int, inradius: float = 1.0) -> HalfSpacePolytope:
    """
    Regular simplex centered at the origin with the given inradius.

    Args:
        dim: Ambient dimension
        inradius: Distance from the center to every facet
    """
    # vertices of the standard simplex, centered and expressed in an
    # orthonormal basis of the hyperplane sum(x) = 1
    corners = np.eye(dim + 1) - 1.0 / (dim + 1)
    basis = np.linalg.svd(corners)[2][:dim]
    directions = corners @ basis.T
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    normals = -directions
    offsets = -np.full(dim + 1, float(inradius))
    return _from_arrays(normals, offsets)
