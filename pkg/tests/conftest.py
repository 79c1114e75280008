"""
Shared fixtures: closed-form scattering data, a perturbed profile and the
three-saddle ray used across the suite.
"""

import os
import sys

import pytest

# Add project root directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from scattering.data import pure_step_data, reflectionless_data  # noqa: E402
from scattering.profile import gaussian_bump, pure_step  # noqa: E402
from steepest_descent.delta import build_delta  # noqa: E402
from steepest_descent.phase import stationary_points  # noqa: E402

STEP_HEIGHT = 2.0
GAMMA = 1.0 / 27.0
RAY_MU = 0.5


@pytest.fixture(scope="session")
def step_data():
    """Closed-form pure-step data, A = 2."""
    return pure_step_data(STEP_HEIGHT)


@pytest.fixture(scope="session")
def reflectionless():
    """Closed-form b = 0 data, A = 2."""
    return reflectionless_data(STEP_HEIGHT)


@pytest.fixture(scope="session")
def step_profile():
    return pure_step(STEP_HEIGHT, GAMMA)


@pytest.fixture(scope="session")
def bump_profile():
    """Pure step plus a real Gaussian bump of height 0.1."""
    return gaussian_bump(STEP_HEIGHT, GAMMA, 0.1, center=0.5, width=0.5)


@pytest.fixture(scope="session")
def geometry():
    """gamma = 1/27, mu = 0.5: three real stationary points, mu > 0."""
    return stationary_points(RAY_MU, GAMMA)


@pytest.fixture(scope="session")
def step_delta(step_data, geometry):
    return build_delta(step_data, geometry)
