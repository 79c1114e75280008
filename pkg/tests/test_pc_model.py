import cmath
import math

import numpy as np
import pytest

from modules.errors import DomainError
from steepest_descent.delta import saddle_exponents
from steepest_descent.pc_model import (LocalModelData, PhiMode, inverse_scaling_map,
                                       lambda_conjugator, large_tau_coefficient, local_model_data,
                                       local_phase_phi, model_m, pc_coefficients, pc_jump,
                                       pc_model_matrix,
                                       scaling_map, sector, xi_leading)


def _consistent_pair(v, r1r):
    """r2r with 1 + r1r r2r = exp(-2 pi v)."""
    return (cmath.exp(-2.0 * math.pi * v) - 1.0) / r1r


def _model(v, r1r=0.4 + 0.3j, chi=0j):
    r2r = _consistent_pair(v, r1r) if v != 0 else 0j
    beta, gamma, printed = pc_coefficients(1, r1r, r2r, v)
    return LocalModelData(saddle=1, lam=1.0, v=v, chi=chi, r1r=r1r, r2r=r2r, beta=beta,
                          gamma=gamma, gamma_printed=printed, curvature=1.0, v_all=(v, 0j, 0j))


def test_zero_exponent_gives_zero_coefficients():
    assert pc_coefficients(1, 0.3, 0.2, 0.0) == (0j, 0j, 0j)


@pytest.mark.parametrize("v", [0.1, 0.25, 0.1 + 0.05j, -0.07 - 0.1j])
def test_coefficient_product_equals_exponent(v):
    r1r = 0.4 + 0.3j
    beta, gamma, printed = pc_coefficients(1, r1r, _consistent_pair(v, r1r), v)
    assert beta * gamma == pytest.approx(v, rel=1e-10)
    assert printed == -gamma


def test_middle_saddle_coefficients_are_conjugated():
    r1r, v = 0.4 + 0.3j, 0.1 + 0.02j
    r2r = _consistent_pair(v, r1r)
    first = pc_coefficients(1, r1r, r2r, v)
    middle = pc_coefficients(2, r1r, r2r, v)
    assert middle[0] == pytest.approx(first[0].conjugate())
    assert middle[1] == pytest.approx(first[1].conjugate())


def test_trivial_model_is_identity():
    model = _model(0j, r1r=0j)
    for tau in (0.5 + 2.0j, -3.0 + 0.2j, 1.5 - 1.0j, 2.0 * cmath.exp(0.25j * math.pi)):
        assert np.allclose(pc_model_matrix(1, model, tau, side=1), np.eye(2), atol=1e-12)


@pytest.mark.parametrize("tau", [1.3, -1.3, 0.4, -2.2])
def test_model_is_continuous_across_real_axis(tau):
    model = _model(0.1)
    above = pc_model_matrix(1, model, tau, side=1)
    below = pc_model_matrix(1, model, tau, side=-1)
    assert np.max(np.abs(above - below)) < 1e-6


def test_large_tau_behaviour():
    model = _model(0.1)
    tau = 30j
    scaled = tau * (pc_model_matrix(1, model, tau) - np.eye(2))
    expected = large_tau_coefficient(model)
    assert np.max(np.abs(scaled - expected)) < 0.02 * np.max(np.abs(expected))


def test_sector_names():
    assert sector(1.0 + 0.5j) == "Omega1"
    assert sector(2.0j) == "Omega0"
    assert sector(-1.0 + 0.1j) == "Omega2"
    assert sector(1.0 - 0.5j) == "Omega1*"
    assert sector(-2.0j) == "Omega0*"
    assert sector(-1.0 - 0.1j) == "Omega2*"
    assert sector(1.0, side=-1) == "Omega1*"


def test_sector_on_jump_ray_needs_side():
    ray = cmath.exp(0.25j * math.pi)
    with pytest.raises(DomainError):
        sector(ray)
    assert sector(ray, side=1) == "Omega0"
    assert sector(ray, side=-1) == "Omega1"
    with pytest.raises(DomainError):
        sector(0.0)


def test_ray_jumps_are_triangular():
    model = _model(0.1)
    for angle, lower_triangular in ((0.25, True), (0.75, False), (-0.25, False), (-0.75, True)):
        J = pc_jump(model, 2.0 * cmath.exp(1j * angle * math.pi))
        zero = J[0, 1] if lower_triangular else J[1, 0]
        assert zero == 0
    with pytest.raises(DomainError):
        pc_jump(model, 2.0 + 0.3j)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_scaling_maps_are_inverse(geometry, s):
    tau = 0.7 - 1.1j
    xi = scaling_map(s, geometry, 4.0, tau)
    assert inverse_scaling_map(s, geometry, 4.0, xi) == pytest.approx(tau)
    doubled = scaling_map(s, geometry, 4.0, 2.0 * tau)
    assert doubled - geometry.saddle(s) == pytest.approx(2.0 * (xi - geometry.saddle(s)))


@pytest.mark.parametrize("s", [1, 2, 3])
def test_remainder_phase_is_the_taylor_tail(geometry, s):
    t, tau = 9.0, 0.8 + 0.3j
    g, lam, c = geometry.gamma, geometry.saddle(s), geometry.curvature(s)
    tail = (4j * g * lam * tau ** 3 / math.sqrt(t * c ** 3) + 1j * g * tau ** 4 / (2.0 * t * c * c))
    difference = local_phase_phi(s, geometry, t, tau) - local_phase_phi(s, geometry, t, 0.0)
    assert difference == pytest.approx(tail, rel=1e-9)


def test_printed_phase_constant(geometry):
    lam, g = geometry.saddle(1), geometry.gamma
    value = local_phase_phi(1, geometry, 9.0, 0.0, mode=PhiMode.LITERAL)
    assert value == pytest.approx(-4.0 * g * lam ** 4 + 0.5 * lam * lam)


def test_scaling_needs_positive_time(geometry):
    with pytest.raises(DomainError):
        scaling_map(1, geometry, 0.0, 1.0)
    with pytest.raises(DomainError):
        scaling_map(4, geometry, 1.0, 1.0)


def test_step_models_on_the_ray(step_data, step_delta, geometry):
    from steepest_descent.residues import regularized_reflections

    exponents = saddle_exponents(step_data, geometry, delta=step_delta)
    t = 16.0
    for s in (1, 2, 3):
        r1r, r2r = regularized_reflections(step_data, geometry.saddle(s))
        model = local_model_data(s, geometry, exponents, r1r, r2r)
        xi, xi_r = xi_leading(s, model, geometry, t)
        assert xi[0, 0] == 0 and xi[1, 1] == 0
        assert np.allclose(xi_r, -xi / 4.0)
        eta = lambda_conjugator(s, model, geometry, t)
        assert math.isfinite(abs(eta))


def test_conjugator_without_exponents(geometry):
    model = _model(0j, chi=0.2 + 0.1j)
    eta = lambda_conjugator(1, model, geometry, 4.0, tau=0.5)
    assert eta == pytest.approx(0.2 + 0.1j + local_phase_phi(1, geometry, 4.0, 0.5))


MODEL_V = [0.11 + 0j, 0.11 + 0.2j, 0.11 - 0.2j, 0.3 + 0.4j]
AXIS_TAU = [0.5, -0.5, 2.0, -2.0]


def _second_derivative(model, tau, h=1e-3):
    return (model_m(model, tau + h) - 2.0 * model_m(model, tau) + model_m(model, tau - h)) / (h * h)


@pytest.mark.parametrize("v", MODEL_V)
@pytest.mark.parametrize("tau", [0.8 + 0.6j, -1.2 + 0.4j, 1.1 - 0.5j, -0.7 - 0.9j])
def test_entries_solve_the_weber_equations(v, tau):
    model = _model(v, r1r=0.5)
    second = _second_derivative(model, tau)
    centre = model_m(model, tau)
    product = model.beta * model.gamma
    rows = np.array([[0.5j], [-0.5j]]) + tau * tau / 4.0 - product
    residual = second + rows * centre
    assert np.max(np.abs(residual)) < 1e-6 * max(np.max(np.abs(centre)), 1.0)


@pytest.mark.parametrize("v", MODEL_V)
def test_first_order_system(v):
    model = _model(v, r1r=0.5)
    tau, h = 0.9 + 0.7j, 1e-5
    derivative = (model_m(model, tau + h) - model_m(model, tau - h)) / (2.0 * h)
    m = model_m(model, tau)
    B = np.array([[0.0, model.beta], [model.gamma, 0.0]])
    residual = derivative + 0.5j * tau * np.diag([1.0, -1.0]) @ m - B @ m
    assert np.max(np.abs(residual)) < 1e-6 * np.max(np.abs(m))


@pytest.mark.parametrize("v", MODEL_V)
@pytest.mark.parametrize("tau", AXIS_TAU)
def test_wronskians_give_back_the_reflections(v, tau):
    model = _model(v, r1r=0.5)
    plus = model_m(model, tau, side=1)
    minus = model_m(model, tau, side=-1)
    lower_left = minus[0, 0] * plus[1, 0] - plus[0, 0] * minus[1, 0]
    upper_right = minus[1, 1] * plus[0, 1] - plus[1, 1] * minus[0, 1]
    assert lower_left == pytest.approx(-model.r1r, abs=1e-6)
    assert upper_right == pytest.approx(-model.r2r, abs=1e-6 * max(abs(model.r2r), 1.0))
    jump = np.linalg.solve(minus, plus)
    expected = np.array([[1.0 + model.r1r * model.r2r, -model.r2r], [-model.r1r, 1.0]])
    assert np.max(np.abs(jump - expected)) < 1e-6 * max(abs(model.r2r), 1.0)


@pytest.mark.parametrize("v", MODEL_V)
@pytest.mark.parametrize("tau", AXIS_TAU)
def test_jump_residual_across_real_axis(v, tau):
    model = _model(v, r1r=0.5)
    above = pc_model_matrix(1, model, tau, side=1)
    below = pc_model_matrix(1, model, tau, side=-1)
    assert np.max(np.abs(above - below)) < 1e-6


@pytest.mark.parametrize("v", MODEL_V[:3])
def test_large_tau_fit_at_fifty(v):
    model = _model(v, r1r=0.5)
    tau = 50j
    fit = tau * (pc_model_matrix(1, model, tau) - np.eye(2))
    assert abs(fit[0, 1] + 1j * model.beta) < 0.02 * abs(model.beta)
    assert abs(fit[1, 0] - 1j * model.gamma) < 0.02 * abs(model.gamma)


def _middle_model(v, r1r=0.5):
    r2r = _consistent_pair(v, r1r)
    beta, gamma, printed = pc_coefficients(2, r1r, r2r, v)
    return LocalModelData(saddle=2, lam=-0.5, v=v, chi=0j, r1r=r1r, r2r=r2r, beta=beta,
                          gamma=gamma, gamma_printed=printed, curvature=1.0, v_all=(0j, v, 0j))


@pytest.mark.parametrize("v", MODEL_V[:3])
@pytest.mark.parametrize("tau", [0.7 + 0.4j, -1.2 + 0.9j, 0.5 - 1.1j, -2.0 - 0.3j, 3.0j])
def test_middle_model_is_the_conjugate_mirror(v, tau):
    model = _middle_model(v)
    middle = pc_model_matrix(2, model, tau)
    mirrored = np.conj(pc_model_matrix(1, model, -complex(tau).conjugate()))
    assert np.max(np.abs(middle - mirrored)) < 1e-8


@pytest.mark.parametrize("v", MODEL_V[:3])
def test_middle_model_carries_conjugated_coefficients(v):
    model = _middle_model(v)
    tau = 50j
    fit = tau * (pc_model_matrix(2, model, tau) - np.eye(2))
    expected = large_tau_coefficient(model)
    assert np.max(np.abs(fit - expected)) < 0.02 * np.max(np.abs(expected))
