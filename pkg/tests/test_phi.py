"""
Tests for the basic kernel Phi and its validator.
"""

import numpy as np
import pytest
from scipy.integrate import quad

from smoothdist.core.errors import InvalidParams
from smoothdist.core.phi import (
    GridSpec,
    PhiParams,
    jump_limit,
    kernel,
    phi,
    phi_d1,
    phi_d2,
    validate_basic_p2s,
)

PARAMS = [PhiParams(0.1, 2), PhiParams(0.3, 3), PhiParams(0.25, 4), PhiParams(0.7, 2)]
KERNEL_GRID = [PhiParams(h, k) for h in (0.05, 0.1, 0.2) for k in (2, 3, 4)]


def _d2(r: float, params: PhiParams) -> float:
    return (1.0 - (1.0 + r) ** (-1.0 / params.h)) ** (params.k - 1)


class TestPhiParams:
    """Admissible kernel parameters."""

    def test_valid(self):
        """Test accepted parameter sets."""
        params = PhiParams(h=0.1, k=2)

        assert params.h == 0.1
        assert params.k == 2
        assert PhiParams(h=3, k=3).h == 3.0

    @pytest.mark.parametrize("h, k", [(0.5, 2), (1.0, 2), (0.5, 3), (1.5, 4)])
    def test_vanishing_denominators(self, h, k):
        """Test that i/h in {1, 2} is rejected."""
        with pytest.raises(InvalidParams, match="denominator"):
            PhiParams(h=h, k=k)

    @pytest.mark.parametrize("h, k", [(0.0, 2), (-0.1, 2), (float("nan"), 2), (0.1, 1), (0.1, 2.5), (0.1, True)])
    def test_out_of_range(self, h, k):
        """Test nonpositive h and non-integer or too small k."""
        with pytest.raises(InvalidParams):
            PhiParams(h=h, k=k)


class TestKernelValues:
    """Values of Phi, Phi' and Phi''."""

    def test_reference_values(self):
        """Test tabulated values for h=0.1."""
        params = PhiParams(0.1, 2)

        assert phi(1.0, params) == pytest.approx(0.402724, abs=1e-6)
        assert phi_d1(1.0, params) == pytest.approx(0.889106, abs=1e-6)
        assert phi_d2(1.0, PhiParams(0.1, 3)) == pytest.approx(0.998048, abs=1e-6)

    def test_zero_on_the_left(self, phi_params):
        """Test that Phi and its derivatives vanish for s <= 0."""
        s = np.array([-5.0, -1e-12, 0.0])
        value, d1, d2 = kernel(phi_params).evaluate(s)

        assert np.all(value == 0)
        assert np.all(d1 == 0)
        assert np.all(d2 == 0)

    def test_shapes(self, phi_params):
        """Test that scalars give floats and arrays keep their shape."""
        grid = np.linspace(-1, 2, 12).reshape(3, 4)

        assert isinstance(phi(0.5, phi_params), float)
        assert isinstance(phi_d2(0.5, phi_params), float)
        assert phi(grid, phi_params).shape == (3, 4)
        assert phi_d1(grid, phi_params).shape == (3, 4)
        assert phi_d2(grid, phi_params).shape == (3, 4)

    @pytest.mark.parametrize("params", PARAMS, ids=lambda p: f"h{p.h}-k{p.k}")
    @pytest.mark.parametrize("s", [1e-4, 0.01, 0.3, 1.0, 4.0, 10.0])
    def test_closed_form_matches_quadrature(self, params, s):
        """Test Phi and Phi' against direct integration of Phi''."""
        d1_ref, _ = quad(_d2, 0.0, s, args=(params,), epsabs=0.0, epsrel=1e-13, limit=200)
        val_ref, _ = quad(
            lambda r: (s - r) * _d2(r, params), 0.0, s, epsabs=0.0, epsrel=1e-13, limit=200
        )

        assert phi_d1(s, params) == pytest.approx(d1_ref, rel=1e-9)
        assert phi(s, params) == pytest.approx(val_ref, rel=1e-9)

    @pytest.mark.slow
    @pytest.mark.parametrize("params", KERNEL_GRID, ids=lambda p: f"h{p.h}-k{p.k}")
    def test_closed_form_on_dense_grid(self, params):
        """Test Phi and Phi' against quadrature at a thousand points in [-1, 10]."""
        s = np.linspace(-1.0, 10.0, 1000)
        value, d1, _ = kernel(params).evaluate(s)
        for i in np.flatnonzero(s > 0):
            d1_ref, _ = quad(_d2, 0.0, s[i], args=(params,), epsabs=0.0, epsrel=1e-13, limit=200)
            val_ref, _ = quad(
                lambda r: (s[i] - r) * _d2(r, params), 0.0, s[i], epsabs=0.0, epsrel=1e-13, limit=200
            )

            assert abs(d1[i] - d1_ref) <= 1e-8
            assert abs(value[i] - val_ref) <= 1e-8
        assert np.all(value[s <= 0] == 0)

    def test_small_arguments(self, phi_params):
        """Test the leading-order behaviour Phi(s) ~ s^3 / (6h) near zero."""
        s = 1e-6
        h = phi_params.h

        assert phi(s, phi_params) == pytest.approx(s ** 3 / (6 * h), rel=1e-4)
        assert phi_d1(s, phi_params) == pytest.approx(s ** 2 / (2 * h), rel=1e-4)
        assert phi_d2(s, phi_params) == pytest.approx(s / h, rel=1e-4)

    def test_monotone(self):
        """Test that Phi, Phi' are nondecreasing and Phi'' stays below 1."""
        s = np.linspace(-1, 20, 4001)
        for params in PARAMS:
            value, d1, d2 = kernel(params).evaluate(s)

            assert np.all(np.diff(value) >= 0)
            assert np.all(np.diff(d1) >= 0)
            assert np.all((d2 >= 0) & (d2 <= 1))

    def test_kernel_is_cached(self, phi_params):
        """Test that the evaluator is shared per parameter set."""
        assert kernel(phi_params) is kernel(PhiParams(0.1, 2))


class TestValidateBasicKernel:
    """Test cases for validate_basic_p2s."""

    @pytest.mark.parametrize("params", PARAMS + KERNEL_GRID, ids=lambda p: f"h{p.h}-k{p.k}")
    def test_admissible_kernels_pass(self, params):
        """Test that every check passes on the default grid."""
        report = validate_basic_p2s(params)

        assert report.passed, [c for c in report.failed_checks()]
        assert {c.name for c in report.checks} == {
            "nonnegative",
            "second_derivative_range",
            "zero_iff_nonpositive",
            "first_derivative_consistency",
            "second_derivative_consistency",
            "continuity_at_zero",
        }
        assert report.info["grid_points"] == 1201

    def test_jump_beyond_order_k(self):
        """Test that the derivative of order k + 1 jumps while order k does not."""
        report = validate_basic_p2s(PhiParams(0.1, 2))

        assert report.info["jump_order_2"] < 0.02
        assert report.info["jump_order_3"] > 1.0

    @pytest.mark.parametrize("params", KERNEL_GRID, ids=lambda p: f"h{p.h}-k{p.k}")
    def test_jump_matches_analytic_limit(self, params):
        """Test orders up to k vanishing at 0+ and order k + 1 reaching (k-1)! / h^(k-1)."""
        report = validate_basic_p2s(params)
        limit = jump_limit(params)

        assert report.info["jump_limit"] == limit
        assert report.info[f"jump_order_{params.k + 1}"] == pytest.approx(limit, rel=0.01)
        for order in range(params.k + 1):
            assert report.info[f"jump_order_{order}"] < 0.01 * limit

    def test_grid_too_small(self, phi_params):
        """Test that a coarse or short grid is rejected."""
        with pytest.raises(ValueError, match="at least 1000"):
            validate_basic_p2s(phi_params, GridSpec(num=100))

        with pytest.raises(ValueError):
            validate_basic_p2s(phi_params, GridSpec(start=0.0))
