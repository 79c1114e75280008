import cmath
import math

import numpy as np
import pytest

from modules.errors import StiffnessError
from modules.ode import ode_integrate
from modules.quadrature import QuadratureSpec

TIGHT = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-11)


def test_zero_rhs_keeps_identity():
    result = ode_integrate(lambda s, y: np.zeros_like(y), np.eye(2), (0.0, 3.0))
    assert np.allclose(result, np.eye(2))


def test_scalar_rotation_over_half_period():
    result = ode_integrate(lambda s, y: 1j * y, 1.0, (0.0, math.pi), TIGHT)
    assert isinstance(result, complex)
    assert abs(result + 1.0) < 1e-9


def test_diagonal_matrix_system():
    generator = np.diag([-1j, 1j])
    result = ode_integrate(lambda s, y: generator @ y, np.eye(2), (0.0, 1.0), TIGHT)
    expected = np.diag([cmath.exp(-1j), cmath.exp(1j)])
    assert np.max(np.abs(result - expected)) < 1e-9


def test_samples_along_the_way():
    final, samples = ode_integrate(lambda s, y: -y, 1.0, (0.0, 2.0), TIGHT, samples_at=[0.5, 1.0])
    assert final == pytest.approx(math.exp(-2.0), rel=1e-8)
    assert [s.real for s in samples] == pytest.approx([math.exp(-0.5), math.exp(-1.0)], rel=1e-8)


def test_backwards_integration():
    result = ode_integrate(lambda s, y: y, 1.0, (1.0, 0.0), TIGHT)
    assert result == pytest.approx(math.exp(-1.0), rel=1e-8)


def test_empty_span_returns_initial_value():
    final, samples = ode_integrate(lambda s, y: y, 2.0 + 1j, (0.5, 0.5), samples_at=[0.5])
    assert final == 2.0 + 1j
    assert samples == [2.0 + 1j]


def test_blow_up_raises_stiffness_error():
    with pytest.raises(StiffnessError):
        ode_integrate(lambda s, y: y * y, 1.0, (0.0, 2.0))
