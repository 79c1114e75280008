import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from modules.errors import AmbiguityError, DomainError, RefinementError
from modules.quadrature import (ContourInterval, QuadratureSpec, cauchy_transform, integrate,
                                integrate_with_error, pv_integrate)


def test_constant_on_unit_interval():
    assert integrate(lambda x: 1.0, ContourInterval(0.0, 1.0)) == pytest.approx(1.0, abs=1e-12)


def test_gaussian_on_whole_line():
    value = integrate(lambda x: math.exp(-x * x), ContourInterval(-math.inf, math.inf))
    assert abs(value - math.sqrt(math.pi)) < 1e-9


def test_full_period_oscillation_vanishes():
    value = integrate(lambda x: cmath.exp(1j * x), ContourInterval(0.0, 2.0 * math.pi))
    assert abs(value) < 1e-9


def test_reversed_orientation_flips_sign():
    forward = integrate(lambda x: x * x, ContourInterval(0.0, 2.0))
    backward = integrate(lambda x: x * x, ContourInterval(0.0, 2.0, left_to_right=False))
    assert backward == pytest.approx(-forward)


def test_tail_cutoff_matches_infinite_transform():
    f = lambda x: 1.0 / (1.0 + x * x)
    cut = QuadratureSpec(tail_cutoff=200.0)
    value = integrate(f, ContourInterval(-math.inf, math.inf, decay_power=2.0), cut)
    assert abs(value - math.pi) < 1e-6


def test_error_estimate_within_tolerance():
    spec = QuadratureSpec()
    value, error = integrate_with_error(lambda x: math.sin(x), ContourInterval(0.0, math.pi), spec)
    assert value == pytest.approx(2.0)
    assert error <= spec.tolerance(value)


def test_non_convergence_carries_last_estimate():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_depth=1)
    with pytest.raises(RefinementError) as info:
        integrate(lambda x: math.sin(1e4 * x * x), ContourInterval(0.0, 10.0), spec)
    assert info.value.estimate is not None


def test_bad_intervals_are_rejected():
    with pytest.raises(DomainError):
        ContourInterval(1.0, 0.0)
    with pytest.raises(DomainError):
        ContourInterval(0.0, math.inf, decay_power=1.0)


@settings(max_examples=20, deadline=None)
@given(st.floats(-3.0, 3.0), st.floats(-3.0, 3.0))
def test_integrate_is_linear(alpha, beta):
    interval = ContourInterval(-1.0, 2.0)
    f = lambda x: cmath.exp(1j * x) * x
    g = lambda x: math.cos(3.0 * x) + 1j * x * x
    combined = integrate(lambda x: alpha * f(x) + beta * g(x), interval)
    separate = alpha * integrate(f, interval) + beta * integrate(g, interval)
    assert abs(combined - separate) < 1e-8


def test_principal_value_of_odd_integrand():
    assert abs(pv_integrate(lambda x: 1.0 / x, 0.0, ContourInterval(-1.0, 1.0))) < 1e-12


def test_principal_value_asymmetric_range():
    value = pv_integrate(lambda x: 1.0 / x, 0.0, ContourInterval(-1.0, 2.0))
    assert abs(value - math.log(2.0)) < 1e-9


def test_principal_value_whole_line_log_ratio():
    A = 1.0

    def f(th):
        return math.log1p(-(1.0 - A * A / 4.0) / (th * th + 1.0)) / th

    value = pv_integrate(f, 0.0, ContourInterval(-math.inf, math.inf, decay_power=3.0))
    assert abs(value) < 1e-8


def test_principal_value_needs_interior_pole():
    with pytest.raises(DomainError):
        pv_integrate(lambda x: 1.0 / (x - 1.0), 1.0, ContourInterval(-1.0, 1.0))


def test_cauchy_transform_of_zero_density():
    assert cauchy_transform(lambda z: 0.0, [ContourInterval(0.0, 1.0)], 0.3 + 0.2j) == 0


def test_cauchy_transform_closed_form():
    # (1/2 pi i) int_0^1 dz/(z - 2) = ln((2 - 1)/2) / (2 pi i)
    value = cauchy_transform(lambda z: 1.0, [ContourInterval(0.0, 1.0)], 2.0)
    expected = -math.log(2.0) / (2j * math.pi)
    assert abs(value - expected) < 1e-10


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.9, 0.9))
def test_plemelj_jump_equals_density(xi):
    density = lambda z: math.cos(z) + 1j * z ** 3
    intervals = [ContourInterval(-1.0, 1.0)]
    plus = cauchy_transform(density, intervals, xi, side=1)
    minus = cauchy_transform(density, intervals, xi, side=-1)
    assert abs(plus - minus - density(xi)) < 1e-9


def test_boundary_value_approaches_from_above():
    density = lambda z: 1.0 + z
    intervals = [ContourInterval(-1.0, 1.0)]
    plus = cauchy_transform(density, intervals, 0.2, side=1)
    near = cauchy_transform(density, intervals, 0.2 + 1e-7j)
    assert abs(plus - near) < 1e-5


def test_on_contour_without_side_is_ambiguous():
    with pytest.raises(AmbiguityError):
        cauchy_transform(lambda z: 1.0, [ContourInterval(0.0, 1.0)], 0.5)
