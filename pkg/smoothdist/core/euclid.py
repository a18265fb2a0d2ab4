"""
Euclidean reference: exact projection onto a polytope, closest-point pairs
between two polytopes and overlap detection.

Projections use Hildreth's dual coordinate ascent followed by an active-set
polish; closest pairs alternate exact projections and finish with a KKT
solve on the detected active facets.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import MaxIterExceeded, ProjectionStalled
from .geometry import HalfSpacePolytope, contains
from .geometry.feasibility import STRICT_MARGIN, max_slack, stack_systems
from .logger import get_logger

logger = get_logger(__name__)

PROJECTION_TOL = 1e-10
PAIR_TOL = 1e-9
PAIR_MAX_ITER = 10000
ACTIVE_TOL = 1e-7
KKT_TOL = 1e-10
POLISH_EVERY = 25


@dataclass
class EuclidResult:
    """Closest points of two polytopes, or an overlap certificate."""

    distance: float
    a0_star: np.ndarray
    b0_star: np.ndarray
    overlap: bool
    certificate: Optional[np.ndarray] = None
    iterations: int = 0
    residual: float = 0.0


def _feasibility_tol(point: np.ndarray) -> float:
    return KKT_TOL * max(1.0, float(np.max(np.abs(point))))


def _polish_projection(
        normals: np.ndarray,
        offsets: np.ndarray,
        p: np.ndarray,
        active: np.ndarray,
) -> Optional[np.ndarray]:
    """Project onto the affine hull of the active facets; keep it only if KKT holds."""
    if not np.any(active):
        return None
    u = normals[active]
    multipliers, *_ = np.linalg.lstsq(u @ u.T, u @ p + offsets[active], rcond=None)
    if np.any(multipliers < -KKT_TOL):
        return None
    x = p - u.T @ multipliers
    if np.max(normals @ x + offsets) > _feasibility_tol(x):
        return None
    return x


def project_euclid(
        polytope: HalfSpacePolytope,
        p: np.ndarray,
        tol: float = PROJECTION_TOL,
        max_sweeps: int = 20000,
) -> np.ndarray:
    """
    Euclidean projection argmin_{x in P} |x - p|.

    Args:
        polytope: Regular polytope
        p: Query point
        tol: Largest dual update accepted as converged
        max_sweeps: Budget of sweeps over all facets

    Returns:
        Closest point of the polytope (``p`` itself when inside)

    Raises:
        ProjectionStalled: If the ascent does not settle within the budget
    """
    p = np.asarray(p, dtype=float)
    if contains(polytope, p):
        return p.copy()

    normals, offsets = polytope.normals, polytope.offsets
    lam = np.zeros(polytope.n_halfspaces)
    x = p.copy()
    for sweep in range(1, max_sweeps + 1):
        largest = 0.0
        for i in range(polytope.n_halfspaces):
            delta = max(-lam[i], float(normals[i] @ x + offsets[i]))
            if delta != 0.0:
                lam[i] += delta
                x -= delta * normals[i]
                largest = max(largest, abs(delta))

        settled = largest < tol
        if settled or sweep % POLISH_EVERY == 0:
            active = (lam > 0) | (normals @ x + offsets > -ACTIVE_TOL)
            polished = _polish_projection(normals, offsets, p, active)
            if polished is not None:
                return polished
        if settled and np.max(normals @ x + offsets) <= _feasibility_tol(x):
            return x

    raise ProjectionStalled(
        f"Hildreth projection did not reach {tol:g} in {max_sweeps} sweeps", last_iterate=x
    )


def overlap_certificate(
        a: HalfSpacePolytope,
        b: HalfSpacePolytope,
) -> Tuple[bool, Optional[np.ndarray], float]:
    """
    Strict feasibility of the stacked constraint systems of A and B.

    Returns:
        (overlap, highest-slack common point, slack); overlap requires a slack
        above 1e-9
    """
    normals, offsets = stack_systems([(a.normals, a.offsets), (b.normals, b.offsets)])
    slack, point = max_slack(normals, offsets)
    return bool(slack > STRICT_MARGIN), point, slack


def _polish_pair(
        a: HalfSpacePolytope,
        b: HalfSpacePolytope,
        xa: np.ndarray,
        xb: np.ndarray,
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Solve the KKT system of min |xa - xb|^2 / 2 on the active facets of both sides."""
    act_a = a.residuals(xa) > -ACTIVE_TOL
    act_b = b.residuals(xb) > -ACTIVE_TOL
    ua, ub = a.normals[act_a], b.normals[act_b]
    n, ka, kb = a.dim, ua.shape[0], ub.shape[0]
    size = 2 * n + ka + kb
    kkt = np.zeros((size, size))
    rhs = np.zeros(size)
    eye = np.eye(n)
    # stationarity: (xa - xb) + ua^T mu = 0, (xb - xa) + ub^T nu = 0
    kkt[:n, :n], kkt[:n, n:2 * n], kkt[:n, 2 * n:2 * n + ka] = eye, -eye, ua.T
    kkt[n:2 * n, :n], kkt[n:2 * n, n:2 * n], kkt[n:2 * n, 2 * n + ka:] = -eye, eye, ub.T
    # active facets hold with equality
    kkt[2 * n:2 * n + ka, :n] = ua
    rhs[2 * n:2 * n + ka] = -a.offsets[act_a]
    kkt[2 * n + ka:, n:2 * n] = ub
    rhs[2 * n + ka:] = -b.offsets[act_b]

    sol, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    if np.max(np.abs(kkt @ sol - rhs)) > _feasibility_tol(sol):
        return None
    pa, pb = sol[:n], sol[n:2 * n]
    mult = sol[2 * n:]
    if np.any(mult < -KKT_TOL):
        return None
    if np.max(a.residuals(pa)) > _feasibility_tol(pa) or np.max(b.residuals(pb)) > _feasibility_tol(pb):
        return None
    return pa, pb


def euclid_pair(
        a: HalfSpacePolytope,
        b: HalfSpacePolytope,
        tol: float = PAIR_TOL,
        max_iter: int = PAIR_MAX_ITER,
) -> EuclidResult:
    """
    Euclidean distance and a closest pair of two polytopes.

    Overlap is decided by strict feasibility of the stacked constraints;
    otherwise exact projections alternate until both points move less than
    ``tol`` and the pair is refined by a KKT solve on the active facets.

    Args:
        a: First polytope
        b: Second polytope
        tol: Step tolerance of the alternation
        max_iter: Alternation budget

    Returns:
        EuclidResult

    Raises:
        MaxIterExceeded: For near-touching pairs; ``last_iterate`` holds the
            current pair stacked as a (2, n) array
    """
    if a.dim != b.dim:
        raise ValueError(f"polytope dimensions differ: {a.dim} != {b.dim}")
    overlap, point, slack = overlap_certificate(a, b)
    if overlap:
        return EuclidResult(
            distance=0.0,
            a0_star=point.copy(),
            b0_star=point.copy(),
            overlap=True,
            certificate=point,
        )

    xa = project_euclid(a, b.interior_point)
    xb = project_euclid(b, xa)
    step = float("inf")
    for iteration in range(1, max_iter + 1):
        na = project_euclid(a, xb)
        nb = project_euclid(b, na)
        step = float(np.linalg.norm(na - xa) + np.linalg.norm(nb - xb))
        xa, xb = na, nb
        if step < tol:
            polished = _polish_pair(a, b, xa, xb)
            if polished is not None and (
                np.linalg.norm(polished[0] - polished[1]) <= np.linalg.norm(xa - xb) + tol
            ):
                xa, xb = polished
            return EuclidResult(
                distance=float(np.linalg.norm(xa - xb)),
                a0_star=xa,
                b0_star=xb,
                overlap=False,
                iterations=iteration,
                residual=step,
            )

    logger.warning("alternating projections stalled at step %.3e (slack %.3e)", step, slack)
    raise MaxIterExceeded(
        f"Euclidean alternation did not settle below {tol:g} in {max_iter} iterations",
        last_iterate=np.vstack([xa, xb]),
        residual=step,
        iterations=max_iter,
    )
