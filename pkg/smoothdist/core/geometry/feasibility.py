"""
Linear-programming primitives on half-space systems u_i^T p + v_i <= 0.

All solves go through scipy's HiGHS backend.
"""

from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from ..logger import get_logger

logger = get_logger(__name__)

STRICT_MARGIN = 1e-9
MILP_MARGIN = 1e-4


def max_slack(
        normals: np.ndarray,
        offsets: np.ndarray,
        positive: bool = False,
        cap: Optional[float] = None,
        box: Optional[Tuple[np.ndarray, float]] = None,
) -> Tuple[float, Optional[np.ndarray]]:
    """
    Maximize a uniform slack s over the system.

    With ``positive=False`` solves max s s.t. u_i^T p + v_i <= -s; with
    ``positive=True`` solves max s s.t. u_i^T p + v_i >= s.

    Args:
        normals: (m, n) array of unit normals
        offsets: (m,) offsets
        positive: Select the positive-side variant
        cap: Optional upper bound on s
        box: Optional (center, half_width) box restricting p

    Returns:
        (slack, point); slack is -inf when infeasible and +inf when unbounded
    """
    m, n = normals.shape
    sign = -1.0 if positive else 1.0
    # rows: sign * (U p + v) + s <= 0
    a_ub = np.hstack([sign * normals, np.ones((m, 1))])
    b_ub = -sign * offsets
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    if box is None:
        p_bounds = [(None, None)] * n
    else:
        center, half_width = box
        p_bounds = [(c - half_width, c + half_width) for c in center]
    bounds = p_bounds + [(None, cap)]

    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status == 2:
        return float("-inf"), None
    if res.status == 3:
        return float("inf"), None
    if res.status != 0:
        logger.debug("linprog returned status %s: %s", res.status, res.message)
        return float("-inf"), None
    return float(res.x[-1]), np.asarray(res.x[:n])


def support(normals: np.ndarray, offsets: np.ndarray, direction: np.ndarray) -> float:
    """
    Support value max d^T p over the system; +inf when unbounded.

    Args:
        normals: (m, n) normals
        offsets: (m,) offsets
        direction: Direction d

    Returns:
        Support value (-inf when the system is infeasible)
    """
    res = linprog(
        -np.asarray(direction, dtype=float),
        A_ub=normals,
        b_ub=-offsets,
        bounds=[(None, None)] * normals.shape[1],
        method="highs",
    )
    if res.status == 3:
        return float("inf")
    if res.status != 0:
        return float("-inf")
    return float(-res.fun)


def is_bounded(normals: np.ndarray, offsets: np.ndarray) -> bool:
    """A nonempty polyhedron is bounded iff every coordinate support is finite."""
    n = normals.shape[1]
    for axis in range(n):
        for sign in (1.0, -1.0):
            direction = np.zeros(n)
            direction[axis] = sign
            if not np.isfinite(support(normals, offsets, direction)):
                return False
    return True


def arrangement_box(normals: np.ndarray, offsets: np.ndarray, center: np.ndarray) -> float:
    """
    Half-width of a box around ``center`` holding every vertex of the
    hyperplane arrangement u_i^T p + v_i = 0 (plus one unit of padding).

    Every nonempty cell of the arrangement touches such a vertex, so sign
    patterns can be searched inside this box.
    """
    m, n = normals.shape
    reach = 0.0
    for subset in combinations(range(m), n):
        idx = list(subset)
        mat = normals[idx]
        if abs(np.linalg.det(mat)) < 1e-12:
            continue
        vertex = np.linalg.solve(mat, -offsets[idx])
        reach = max(reach, float(np.max(np.abs(vertex - center))))
    return reach + 1.0


def _positive_feasible(
        normals: np.ndarray,
        offsets: np.ndarray,
        subset: Sequence[int],
        box: Tuple[np.ndarray, float],
) -> bool:
    idx = list(subset)
    slack, _ = max_slack(normals[idx], offsets[idx], positive=True, cap=1.0, box=box)
    return slack > STRICT_MARGIN


def max_positive_enumerate(
        normals: np.ndarray,
        offsets: np.ndarray,
        center: np.ndarray,
) -> Tuple[int, List[int]]:
    """
    Largest set of inequalities that can be strictly positive together,
    by level-wise subset enumeration.

    A subset can only be feasible if all of its subsets are, so candidates
    of size j+1 are grown from feasible sets of size j. The search is
    exhaustive over the subset lattice.

    Args:
        normals: (m, n) normals
        offsets: (m,) offsets
        center: A point inside the polytope (anchors the search box)

    Returns:
        (m, maximizing subset)
    """
    box = (center, arrangement_box(normals, offsets, center))
    m_total = normals.shape[0]
    level = [
        (i,) for i in range(m_total)
        if _positive_feasible(normals, offsets, (i,), box)
    ]
    best: Tuple[int, ...] = level[0] if level else ()
    while level:
        feasible = set(level)
        candidates = set()
        for a, b in combinations(level, 2):
            if a[:-1] != b[:-1]:
                continue
            merged = tuple(sorted(set(a) | set(b)))
            if all(sub in feasible for sub in combinations(merged, len(merged) - 1)):
                candidates.add(merged)
        level = sorted(
            cand for cand in candidates
            if _positive_feasible(normals, offsets, cand, box)
        )
        if level:
            best = level[0]
    return len(best), list(best)


def max_positive_milp(
        normals: np.ndarray,
        offsets: np.ndarray,
        center: np.ndarray,
) -> Tuple[int, List[int], Optional[np.ndarray]]:
    """
    Largest simultaneously positive set via a big-M mixed-integer program.

    maximize sum b_i subject to u_i^T p + v_i >= delta - M_i (1 - b_i),
    b binary, p inside the arrangement box. The chosen subset is
    re-certified with the strict LP; an uncertified answer falls back to
    enumeration.

    Returns:
        (m, maximizing subset, witness point)
    """
    m_total, n = normals.shape
    half_width = arrangement_box(normals, offsets, center)
    big_m = (
        np.abs(normals @ center + offsets)
        + half_width * np.abs(normals).sum(axis=1)
        + 2.0 * MILP_MARGIN
    )
    # u_i^T p - M_i b_i >= delta - M_i - v_i
    a = np.hstack([normals, -np.diag(big_m)])
    lower = MILP_MARGIN - big_m - offsets
    constraint = LinearConstraint(a, lower, np.full(m_total, np.inf))
    cost = np.concatenate([np.zeros(n), -np.ones(m_total)])
    bounds = Bounds(
        np.concatenate([center - half_width, np.zeros(m_total)]),
        np.concatenate([center + half_width, np.ones(m_total)]),
    )
    integrality = np.concatenate([np.zeros(n), np.ones(m_total)])
    res = milp(cost, constraints=constraint, bounds=bounds, integrality=integrality)

    if res.status == 0 and res.x is not None:
        subset = [i for i in range(m_total) if res.x[n + i] > 0.5]
        box = (center, half_width)
        if subset and _positive_feasible(normals, offsets, subset, box):
            return len(subset), subset, np.asarray(res.x[:n])

    logger.warning("MILP answer not certified (status %s); enumerating subsets", res.status)
    count, subset = max_positive_enumerate(normals, offsets, center)
    return count, subset, None


def stack_systems(systems: Iterable[Tuple[np.ndarray, np.ndarray]]) -> Tuple[np.ndarray, np.ndarray]:
    """Concatenate several half-space systems into one."""
    normals, offsets = zip(*systems)
    return np.vstack(normals), np.concatenate(offsets)
