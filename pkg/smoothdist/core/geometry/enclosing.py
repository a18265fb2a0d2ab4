"""
Vertex enumeration for small H-representations and the minimum enclosing
ball of a point cloud in any dimension (Welzl's move-to-front recursion).
"""

from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

VERTEX_TOL = 1e-9
COVER_INFLATION = 0.05


def vertices(normals: np.ndarray, offsets: np.ndarray, tol: float = VERTEX_TOL) -> np.ndarray:
    """
    Enumerate polytope vertices by solving every dim-subset of facets.

    Fine for up to about twenty facets.

    Args:
        normals: (m, n) unit normals
        offsets: (m,) offsets
        tol: Feasibility tolerance and duplicate radius

    Returns:
        (V, n) array of distinct vertices
    """
    m, n = normals.shape
    found: List[np.ndarray] = []
    for subset in combinations(range(m), n):
        idx = list(subset)
        mat = normals[idx]
        if abs(np.linalg.det(mat)) < 1e-12:
            continue
        point = np.linalg.solve(mat, -offsets[idx])
        if np.max(normals @ point + offsets) > tol:
            continue
        if any(np.linalg.norm(point - q) <= tol * 10 for q in found):
            continue
        found.append(point)
    return np.array(found).reshape(-1, n)


def _circumball(support: List[np.ndarray]) -> Tuple[np.ndarray, float]:
    """Smallest ball with every support point on its boundary (affine hull center)."""
    p0 = support[0]
    if len(support) == 1:
        return p0.copy(), 0.0
    q = np.array([p - p0 for p in support[1:]]).T
    gram = q.T @ q
    lam = np.linalg.lstsq(gram, 0.5 * np.diag(gram), rcond=None)[0]
    center = p0 + q @ lam
    radius = max(float(np.linalg.norm(p - center)) for p in support)
    return center, radius


def _inside(point: np.ndarray, ball: Optional[Tuple[np.ndarray, float]]) -> bool:
    if ball is None:
        return False
    center, radius = ball
    return float(np.linalg.norm(point - center)) <= radius * (1.0 + 1e-10) + 1e-12


def min_enclosing_ball(points: np.ndarray, seed: int = 0) -> Tuple[np.ndarray, float]:
    """
    Minimum enclosing ball of a point cloud.

    Args:
        points: (N, n) array, N >= 1
        seed: Seed for the random insertion order

    Returns:
        (center, radius)
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError("min_enclosing_ball needs a non-empty (N, n) array")
    order = np.random.default_rng(seed).permutation(points.shape[0])
    shuffled = [points[i] for i in order]
    dim = points.shape[1]

    def welzl(count: int, support: List[np.ndarray]) -> Optional[Tuple[np.ndarray, float]]:
        if count == 0 or len(support) == dim + 1:
            return _circumball(support) if support else None
        point = shuffled[count - 1]
        ball = welzl(count - 1, support)
        if _inside(point, ball):
            return ball
        return welzl(count - 1, support + [point])

    ball = welzl(len(shuffled), [])
    assert ball is not None
    return ball


def covering_ball(normals: np.ndarray, offsets: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Ball strictly covering the polytope: vertex MEB inflated by 5%.

    Every vertex lies strictly inside, so rho is negative on the whole
    polytope.

    Args:
        normals: (m, n) unit normals
        offsets: (m,) offsets

    Returns:
        (cover_center, cover_radius)
    """
    verts = vertices(normals, offsets)
    center, radius = min_enclosing_ball(verts)
    return center, radius * (1.0 + COVER_INFLATION)
