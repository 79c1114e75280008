import math

import pytest

from modules.errors import DomainError, RegimeError
from steepest_descent.phase import (Regime, critical_slope, phase_theta, require_first_domain,
                                    sign_of_re_phi, stationary_points, t_theta)

GAMMA = 1.0 / 27.0


def test_phase_known_value():
    assert phase_theta(1.0, 1.0, 1.0) == 8.0
    assert t_theta(1.0, 2.0, 0.0, 1.0) == 2.0
    assert t_theta(0.5, 1.0, 2.0, 0.1) == pytest.approx(2.0 * phase_theta(0.5, 0.5, 0.1))


@pytest.mark.parametrize("xi", [0.3, -1.2, 0.4 + 0.7j])
def test_derivatives_by_differences(xi):
    h = 1e-5
    for order in range(1, 4):
        difference = (phase_theta(xi + h, 0.6, GAMMA, order - 1)
                      - phase_theta(xi - h, 0.6, GAMMA, order - 1)) / (2.0 * h)
        assert phase_theta(xi, 0.6, GAMMA, order) == pytest.approx(difference, rel=1e-7, abs=1e-8)
    assert phase_theta(xi, 0.6, GAMMA, 5) == 0


def test_negative_order_is_rejected():
    with pytest.raises(DomainError):
        phase_theta(1.0, 0.5, GAMMA, -1)


def test_critical_slope():
    assert critical_slope(GAMMA) == pytest.approx(1.0)


def test_three_saddles_on_reference_ray():
    geometry = stationary_points(22.0 / 27.0, GAMMA)
    assert geometry.regime is Regime.THREE_REAL
    assert geometry.saddle(1) == pytest.approx(1.0, abs=1e-12)
    assert geometry.saddle(2) == pytest.approx(0.4680, abs=1e-3)
    assert geometry.saddle(3) == pytest.approx(-1.4680, abs=1e-3)
    assert sum(geometry.saddles) == pytest.approx(0.0, abs=1e-12)
    assert geometry.in_first_domain


def test_curvatures_are_half_the_second_derivative(geometry):
    for lam, c in zip(geometry.lambdas, geometry.curvatures):
        assert 2.0 * c == pytest.approx(phase_theta(lam, geometry.mu, GAMMA, 2))
    assert all(geometry.curvature(s) > 0 for s in (1, 2, 3))


def test_zero_slope_roots_with_boundary_allowed():
    geometry = stationary_points(0.0, GAMMA, allow_boundary=True)
    edge = 3.0 * math.sqrt(3.0) / 4.0
    assert geometry.lambdas == pytest.approx((-edge, 0.0, edge), abs=1e-12)
    assert not geometry.in_first_domain


def test_single_stationary_point_above_critical_slope():
    geometry = stationary_points(1.5, GAMMA)
    assert geometry.regime is Regime.ONE_REAL
    assert len(geometry.lambdas) == 1
    with pytest.raises(RegimeError):
        geometry.saddle(1)
    with pytest.raises(RegimeError):
        require_first_domain(geometry)


def test_double_root_at_critical_slope():
    geometry = stationary_points(1.0, GAMMA, allow_boundary=True)
    assert geometry.regime is Regime.DOUBLE_ROOT
    assert geometry.lambdas == pytest.approx((-1.5, 0.75))


@pytest.mark.parametrize("mu", [0.0005, -0.0002, 0.9995, -1.0005])
def test_guard_band_is_rejected(mu):
    with pytest.raises(RegimeError):
        stationary_points(mu, GAMMA)


def test_negative_slope_mirrors_labels(geometry):
    mirrored = stationary_points(-geometry.mu, GAMMA)
    assert mirrored.saddles == pytest.approx(tuple(-lam for lam in geometry.saddles), abs=1e-12)
    assert not mirrored.in_first_domain


def test_bad_gamma():
    with pytest.raises(DomainError):
        stationary_points(0.5, 0.0)


def test_saddle_index_range(geometry):
    with pytest.raises(DomainError):
        geometry.saddle(4)


def test_sign_of_exponent(geometry):
    assert sign_of_re_phi(0.3, geometry) == 0
    assert sign_of_re_phi(2.0 + 0.1j, geometry) == -1
    assert sign_of_re_phi(2.0 - 0.1j, geometry) == 1
    for xi in (0.1 + 0.2j, -0.9 + 0.05j, 3.0 + 1.0j):
        assert sign_of_re_phi(xi.conjugate(), geometry) == -sign_of_re_phi(xi, geometry)


def test_geometry_report(geometry):
    report = geometry.as_dict()
    assert report["regime"] == "ThreeReal"
    assert len(report["saddles"]) == 3
