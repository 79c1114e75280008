import math

import pytest

from modules.errors import DomainError, RegimeError
from steepest_descent.delta import build_delta, log_weight, saddle_exponents
from steepest_descent.phase import stationary_points

GAMMA = 1.0 / 27.0


@pytest.fixture(scope="module")
def reference_delta(step_data):
    # lambda1 = 1 on this ray, where 1 + r1 r2 = 1/2
    return build_delta(step_data, stationary_points(22.0 / 27.0, GAMMA))


def test_exponent_at_unit_saddle(reference_delta):
    v1 = reference_delta.v[0]
    assert v1.real == pytest.approx(math.log(2.0) / (2.0 * math.pi), abs=1e-10)
    assert v1.real == pytest.approx(0.1103178, abs=1e-7)
    assert abs(v1.imag) < 1e-12


def test_log_weight_of_step(step_data):
    assert log_weight(step_data, 1.0) == pytest.approx(-math.log(2.0))


@pytest.mark.parametrize("xi", [0.7, -2.5])
def test_jump_across_the_contour(step_delta, step_data, xi):
    assert step_delta.on_contour(xi)
    plus, minus = step_delta.boundary_values(xi)
    expected = 1.0 + step_data.r1(xi) * step_data.r2(xi)
    assert plus / minus == pytest.approx(expected, rel=1e-8)


def test_off_contour_boundary_values_agree(step_delta):
    lam2, lam3 = step_delta.geometry.saddle(2), step_delta.geometry.saddle(3)
    xi = 0.5 * (lam2 + lam3)
    assert not step_delta.on_contour(xi)
    plus, minus = step_delta.boundary_values(xi)
    assert plus == pytest.approx(minus, rel=1e-9)


def test_normalization_at_infinity(step_delta):
    assert abs(step_delta(1e4j) - 1.0) < 1e-3


@pytest.mark.parametrize("xi", [0.3 + 0.4j, -1.0 + 0.1j, 2.0 + 2.0j])
def test_conjugate_symmetry(step_delta, xi):
    assert step_delta(xi.conjugate()).conjugate() == pytest.approx(1.0 / step_delta(xi), rel=1e-8)


def test_reflectionless_delta_is_one(reflectionless, geometry):
    delta = build_delta(reflectionless, geometry)
    assert delta.v == (0, 0, 0)
    assert delta(0.2 + 0.3j) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_regular_factor_converges_at_saddle(step_delta, s):
    lam = step_delta.geometry.saddle(s)
    target = step_delta.chi(s)
    coarse = abs(step_delta.chi(s, lam + 1e-3j) - target)
    fine = abs(step_delta.chi(s, lam + 1e-5j) - target)
    assert fine < 1e-4
    assert fine < 0.05 * coarse


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("offset", [0.02 + 0.02j, -0.03 - 0.01j, 0.05j])
def test_product_form_matches_regularized_integral(step_delta, s, offset):
    xi = step_delta.geometry.saddle(s) + offset
    assert abs(step_delta.chi(s, xi) - step_delta.chi_regularized(s, xi)) < 1e-5


@pytest.mark.parametrize("s", [1, 2, 3])
def test_regularized_integral_at_saddle(step_delta, s):
    assert abs(step_delta.chi_regularized(s) - step_delta.chi_at_saddle(s)) < 1e-5


@pytest.mark.parametrize("s", [1, 2, 3])
def test_regularized_integral_approaches_saddle_value(step_delta, s):
    lam = step_delta.geometry.saddle(s)
    target = step_delta.chi_at_saddle(s)
    errors = [abs(step_delta.chi_regularized(s, lam + 1j * h) - target) for h in (1e-2, 1e-3, 1e-4)]
    assert errors[-1] < 1e-3
    assert errors[1] < 0.3 * errors[0]
    assert errors[2] < 0.3 * errors[1]


def test_regularized_integral_needs_complex_point(step_delta):
    with pytest.raises(DomainError):
        step_delta.chi_regularized(1, step_delta.geometry.saddle(1) + 0.1)


def test_saddle_exponents_bundle(step_delta, step_data, geometry):
    exponents = saddle_exponents(step_data, geometry, delta=step_delta)
    assert exponents.v == step_delta.v
    assert exponents.chi[0] == step_delta.chi_at_saddle(1)
    assert all(abs(arg) < 1e-12 for arg in exponents.delta_arg)


def test_endpoints_are_guarded(step_delta):
    with pytest.raises(DomainError):
        step_delta(step_delta.geometry.saddle(2))


def test_needs_first_domain(step_data):
    with pytest.raises(RegimeError):
        build_delta(step_data, stationary_points(-0.5, GAMMA))
