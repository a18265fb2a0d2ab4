"""
Shared fixtures for the smoothdist test suite.
"""

import logging

import numpy as np
import pytest

from smoothdist.core.geometry import box_polytope
from smoothdist.core.p2s import P2SMetric
from smoothdist.core.phi import PhiParams


@pytest.fixture(autouse=True)
def reset_package_logger():
    """The CLI callback installs a non-propagating handler; undo it for caplog."""
    yield
    logger = logging.getLogger("smoothdist")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def phi_params():
    return PhiParams(h=0.1, k=2)


@pytest.fixture
def square():
    """[-0.5, 0.5]^2."""
    return box_polytope([0.5, 0.5])


@pytest.fixture
def cube():
    """[-0.5, 0.5]^3."""
    return box_polytope([0.5, 0.5, 0.5])


@pytest.fixture
def cube_metric(cube, phi_params):
    return P2SMetric.build(cube, phi_params, eps=0.01, sigma=0.9)


@pytest.fixture
def square_metric(square, phi_params):
    return P2SMetric.build(square, phi_params, eps=0.01, sigma=0.9)
