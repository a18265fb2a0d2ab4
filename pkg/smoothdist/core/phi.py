"""
Basic k-times differentiable kernel for the half-line (-inf, 0].

    Phi''(s) = (1 - (s + 1)^(-1/h))^(k-1)   for s > 0, 0 otherwise,

with Phi and Phi' its first and second antiderivatives vanishing at 0. The
binomial closed forms are

    Phi'(s) = sum_i C(k-1, i) (-1)^i ((s+1)^(1 - i/h) - 1) / (1 - i/h)
    Phi(s)  = sum_i C(k-1, i) (-1)^i / (1 - i/h)
              * [((s+1)^(2 - i/h) - 1) / (2 - i/h) - s]

The alternating sums cancel badly near s = 0, so evaluations that lose more
than six digits are redone by adaptive quadrature of Phi''.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.special import comb

from .errors import InvalidParams
from .logger import LoggerMixin
from .validation import ValidationReport

ArrayLike = Union[float, np.ndarray]

MAX_DIGITS_LOST = 6.0
EXCLUSION_TOL = 1e-9


@dataclass(frozen=True)
class PhiParams:
    """Smoothing parameter h > 0 and differentiability order k >= 2."""

    h: float
    k: int

    def __post_init__(self) -> None:
        if not (isinstance(self.h, (int, float)) and np.isfinite(self.h) and self.h > 0):
            raise InvalidParams(f"h must be a positive real, got {self.h!r}")
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 2:
            raise InvalidParams(f"k must be an integer >= 2, got {self.k!r}")
        object.__setattr__(self, "h", float(self.h))
        object.__setattr__(self, "k", int(self.k))
        for i in range(1, self.k):
            ratio = i / self.h
            if abs(ratio - 1.0) < EXCLUSION_TOL or abs(ratio - 2.0) < EXCLUSION_TOL:
                raise InvalidParams(
                    f"i/h = {ratio:g} for i={i} makes a closed-form denominator vanish "
                    f"(h={self.h:g}, k={self.k})"
                )


def _neumaier_sum(terms: np.ndarray) -> np.ndarray:
    """Compensated sum along the last axis."""
    total = np.zeros(terms.shape[:-1])
    comp = np.zeros(terms.shape[:-1])
    for j in range(terms.shape[-1]):
        term = terms[..., j]
        t = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - t) + term, (term - t) + total)
        total = t
    return total + comp


class BasicPhi(LoggerMixin):
    """Vectorized evaluator of Phi, Phi' and Phi'' for one parameter set."""

    def __init__(self, params: PhiParams) -> None:
        """
        Initialize the evaluator.

        Args:
            params: Validated kernel parameters
        """
        self.params = params
        i = np.arange(params.k)
        self._coef = comb(params.k - 1, i) * (-1.0) ** i
        self._rate = i / params.h

    def d2(self, s: ArrayLike) -> ArrayLike:
        """Phi''(s), in [0, 1)."""
        arr = np.asarray(s, dtype=float)
        out = np.zeros_like(arr)
        pos = arr > 0
        if np.any(pos):
            base = -np.expm1(-np.log1p(arr[pos]) / self.params.h)
            out[pos] = base ** (self.params.k - 1)
        return out if isinstance(s, np.ndarray) else float(out)

    def _d2_scalar(self, r: float) -> float:
        return float((-np.expm1(-np.log1p(r) / self.params.h)) ** (self.params.k - 1))

    def _quad_d1(self, s: float) -> float:
        value, _ = quad(self._d2_scalar, 0.0, s, epsabs=0.0, epsrel=1e-13, limit=200)
        return float(value)

    def _quad_value(self, s: float) -> float:
        value, _ = quad(
            lambda r: (s - r) * self._d2_scalar(r), 0.0, s, epsabs=0.0, epsrel=1e-13, limit=200
        )
        return float(value)

    def _closed_forms(self, s: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Closed-form Phi, Phi' and their digit-loss estimates for s > 0."""
        log_base = np.log1p(s)[:, None]
        one = 1.0 - self._rate
        two = 2.0 - self._rate

        d1_terms = self._coef * np.expm1(one * log_base) / one
        d1 = _neumaier_sum(d1_terms)
        d1_scale = np.abs(d1_terms).sum(axis=1)

        inner = np.expm1(two * log_base) / two
        val_terms = (self._coef / one) * (inner - s[:, None])
        value = _neumaier_sum(val_terms)
        val_scale = (np.abs(self._coef / one) * (np.abs(inner) + s[:, None])).sum(axis=1)

        with np.errstate(divide="ignore"):
            d1_loss = np.log10(d1_scale / np.abs(d1))
            val_loss = np.log10(val_scale / np.abs(value))
        return value, d1, val_loss, d1_loss

    def evaluate(self, s: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Evaluate (Phi, Phi', Phi'') together.

        Args:
            s: Scalar or array of arguments

        Returns:
            Three arrays shaped like ``s``
        """
        arr = np.atleast_1d(np.asarray(s, dtype=float))
        value = np.zeros_like(arr)
        d1 = np.zeros_like(arr)
        pos = arr > 0
        if np.any(pos):
            sp = arr[pos]
            v, g, v_loss, g_loss = self._closed_forms(sp)
            redo_v = np.flatnonzero(~(v_loss <= MAX_DIGITS_LOST))
            redo_g = np.flatnonzero(~(g_loss <= MAX_DIGITS_LOST))
            if redo_v.size or redo_g.size:
                self.logger.debug(
                    "%d closed-form evaluations fell back to quadrature",
                    redo_v.size + redo_g.size,
                )
            for j in redo_v:
                v[j] = self._quad_value(float(sp[j]))
            for j in redo_g:
                g[j] = self._quad_d1(float(sp[j]))
            # round-off can leave -1e-30 style values
            value[pos] = np.maximum(v, 0.0)
            d1[pos] = np.maximum(g, 0.0)
        d2 = np.asarray(self.d2(arr))
        shape = np.shape(s)
        return value.reshape(shape), d1.reshape(shape), d2.reshape(shape)

    def value(self, s: ArrayLike) -> ArrayLike:
        """Phi(s)."""
        out = self.evaluate(s)[0]
        return out if isinstance(s, np.ndarray) else float(out)

    def d1(self, s: ArrayLike) -> ArrayLike:
        """Phi'(s)."""
        out = self.evaluate(s)[1]
        return out if isinstance(s, np.ndarray) else float(out)


@lru_cache(maxsize=32)
def kernel(params: PhiParams) -> BasicPhi:
    """Shared evaluator for ``params``."""
    return BasicPhi(params)


def phi(s: ArrayLike, params: PhiParams) -> ArrayLike:
    """
    Basic kernel value: 0 for s <= 0, nonnegative and nondecreasing.

    Args:
        s: Argument (scalar or array)
        params: Kernel parameters

    Returns:
        Phi(s)
    """
    return kernel(params).value(s)


def phi_d1(s: ArrayLike, params: PhiParams) -> ArrayLike:
    """First derivative of the basic kernel."""
    return kernel(params).d1(s)


def phi_d2(s: ArrayLike, params: PhiParams) -> ArrayLike:
    """Second derivative of the basic kernel, in [0, 1)."""
    return kernel(params).d2(s)


@dataclass(frozen=True)
class GridSpec:
    """Uniform sample grid for the kernel validator."""

    start: float = -2.0
    stop: float = 10.0
    num: int = 1201

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.num)


JUMP_MESH = 1e-3
JUMP_HALVINGS = 2
JUMP_SHRINK = 0.75


def _one_sided_jump(fn, order: int, mesh: float) -> float:
    """Forward-difference estimate of the order-th derivative just right of 0.

    The left side is identically zero, so this is the jump across s = 0.
    """
    samples = np.asarray(fn(mesh * np.arange(1, order + 2)))
    return float(abs(np.diff(samples, n=order)[0]) / mesh ** order)


def jump_limit(params: PhiParams) -> float:
    """Right limit of the order-(k+1) derivative of Phi at 0, (k-1)! / h^(k-1)."""
    return math.factorial(params.k - 1) / params.h ** (params.k - 1)


def validate_basic_p2s(params: PhiParams, grid: Optional[GridSpec] = None) -> ValidationReport:
    """
    Check the basic-kernel properties on a sample grid.

    Checks: Phi >= 0; Phi'' = 0 for s <= 0 and 0 < Phi'' < 1 for s > 0
    (Phi'' may round to 1.0 once (s+1)^(-1/h) drops below machine
    precision); derivatives up to order k continuous across 0; Phi = 0 iff
    s <= 0; analytic derivatives agree with central differences.

    Args:
        params: Kernel parameters
        grid: Sample grid covering [-2, 10] with at least 1000 points

    Returns:
        ValidationReport; failures are recorded, not raised
    """
    grid = grid or GridSpec()
    if grid.num < 1000 or grid.start > -2.0 or grid.stop < 10.0:
        raise ValueError("grid must cover [-2, 10] with at least 1000 points")
    fn = kernel(params)
    s = grid.points()
    value, d1, d2 = fn.evaluate(s)
    report = ValidationReport(title=f"basic kernel h={params.h:g} k={params.k}")
    report.info.update({"h": params.h, "k": params.k, "grid_points": int(s.size)})

    negative = int(np.sum(value < 0))
    report.add("nonnegative", negative == 0, "Phi >= 0 on the grid", negative)

    pos = s > 0
    saturated = (1.0 + s) ** (-1.0 / params.h) < np.finfo(float).eps
    bad_range = int(np.sum(pos & ((d2 <= 0) | ((d2 >= 1) & ~saturated))))
    bad_zero = int(np.sum(~pos & (d2 != 0)))
    report.add(
        "second_derivative_range",
        bad_range + bad_zero == 0,
        "0 < Phi'' < 1 for s > 0, Phi'' = 0 for s <= 0",
        bad_range + bad_zero,
    )

    bad_support = int(np.sum((value == 0) != ~pos))
    report.add("zero_iff_nonpositive", bad_support == 0, "Phi(s) = 0 iff s <= 0", bad_support)

    step = 1e-6 * np.maximum(1.0, np.abs(s))
    away = np.abs(s) > 10 * step
    _, d1_plus, _ = fn.evaluate(s + step)
    _, d1_minus, _ = fn.evaluate(s - step)
    fd1 = (fn.value(s + step) - fn.value(s - step)) / (2 * step)
    fd2 = (d1_plus - d1_minus) / (2 * step)
    err1 = np.abs(d1 - fd1)[away]
    err2 = np.abs(d2 - fd2)[away]
    report.add(
        "first_derivative_consistency",
        bool(np.all(err1 <= 1e-6)),
        f"max |Phi' - FD(Phi)| = {err1.max():.2e}",
        int(np.sum(err1 > 1e-6)),
    )
    report.add(
        "second_derivative_consistency",
        bool(np.all(err2 <= 1e-6)),
        f"max |Phi'' - FD(Phi')| = {err2.max():.2e}",
        int(np.sum(err2 > 1e-6)),
    )

    # order j of Phi is order j-2 of Phi''; orders 0 and 1 use Phi, Phi'
    def order_fn(order: int):
        if order == 0:
            return fn.value, 0
        if order == 1:
            return fn.d1, 0
        return fn.d2, order - 2

    # near 0+, Phi'' ~ (s/h)^(k-1): the mesh scales with h so samples stay there
    mesh = JUMP_MESH * min(params.h, 1.0)
    discontinuous = []
    for order in range(params.k + 2):
        base, diff_order = order_fn(order)
        jumps = [_one_sided_jump(base, diff_order, mesh / 2 ** i) for i in range(JUMP_HALVINGS + 1)]
        report.info[f"jump_order_{order}"] = jumps[-1]
        if order > params.k:
            # not required; tends to jump_limit(params)
            continue
        if not all(finer <= JUMP_SHRINK * coarser for coarser, finer in zip(jumps, jumps[1:])):
            discontinuous.append(order)
    report.info["jump_limit"] = jump_limit(params)
    report.add(
        "continuity_at_zero",
        not discontinuous,
        "derivatives up to order k continuous across s = 0"
        + (f"; jumps at orders {discontinuous}" if discontinuous else ""),
        len(discontinuous),
    )
    return report
