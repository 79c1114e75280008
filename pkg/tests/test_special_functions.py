import cmath
import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from modules.errors import PoleError
from modules.special_functions import (complex_gamma, d_minus_one, parabolic_cylinder_D,
                                       reciprocal_gamma)


def test_gamma_known_values():
    assert complex_gamma(1.0) == pytest.approx(1.0)
    assert complex_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert abs(complex_gamma(1j)) == pytest.approx(math.sqrt(math.pi / math.sinh(math.pi)), rel=1e-10)
    assert abs(complex_gamma(1j)) == pytest.approx(0.5215404, abs=1e-7)


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0 + 0j])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        complex_gamma(z)
    assert reciprocal_gamma(z) == 0


@settings(max_examples=40, deadline=None)
@given(st.floats(-9.5, 9.0), st.floats(-5.0, 5.0))
def test_gamma_recurrence(re, im):
    z = complex(re, im)
    assume(min(abs(z - n) for n in range(-10, 1)) > 0.1)
    upper = complex_gamma(z + 1.0)
    assert abs(upper - z * complex_gamma(z)) < 1e-9 * abs(upper)


def test_reciprocal_gamma_matches_gamma():
    z = 0.3 - 1.2j
    assert reciprocal_gamma(z) * complex_gamma(z) == pytest.approx(1.0, rel=1e-12)


def test_order_zero_is_gaussian():
    assert parabolic_cylinder_D(0.0, 2.0) == pytest.approx(math.exp(-1.0), rel=1e-12)
    z = 0.7 + 1.1j
    assert parabolic_cylinder_D(0.0, z) == pytest.approx(cmath.exp(-z * z / 4.0), rel=1e-12)


def test_order_minus_one_at_origin():
    assert parabolic_cylinder_D(-1.0, 0.0) == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-12)
    assert d_minus_one(0.0) == pytest.approx(1.2533141, abs=1e-7)


@pytest.mark.parametrize("z", [0.4, 1.3, -0.8 + 0.5j, 2.0 - 1.0j])
def test_order_minus_one_against_erfc(z):
    assert parabolic_cylinder_D(-1.0, z) == pytest.approx(d_minus_one(z), rel=1e-10)


def test_three_term_recurrence():
    a, z = 0.3 + 0.1j, 1.5
    residual = (parabolic_cylinder_D(a + 1.0, z) - z * parabolic_cylinder_D(a, z)
                + a * parabolic_cylinder_D(a - 1.0, z))
    assert abs(residual) < 1e-9


@pytest.mark.parametrize("a", [0.0, 0.25j, -0.25j, 0.3 + 0.1j])
@pytest.mark.parametrize("z", [0.5, 1.5 + 0.5j, -2.0 + 1.0j, 3.0])
def test_weber_equation(a, z):
    h = 1e-3
    centre = parabolic_cylinder_D(a, z)
    second = (parabolic_cylinder_D(a, z + h) - 2.0 * centre + parabolic_cylinder_D(a, z - h)) / h ** 2
    residual = second + (a + 0.5 - z * z / 4.0) * centre
    assert abs(residual) < 1e-6 * max(abs(centre), 1.0)
