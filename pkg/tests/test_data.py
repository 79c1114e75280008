
import pytest

from modules.errors import DomainError, PoleError, UnsupportedDegeneracyError
from scattering.auxiliary import a2_from_auxiliary, auxiliary_f, auxiliary_samples
from scattering.data import (CaseTag, ScatteringData, a1_derivative, classify_case, complete,
                             from_profile, pure_step_data, reflection_coefficients)


@pytest.fixture(scope="module")
def step_from_profile(step_profile):
    return from_profile(step_profile)


@pytest.mark.parametrize("A", [0.5, 1.0, 2.0, 3.0])
def test_pure_step_zero_location(A):
    data = pure_step_data(A)
    assert data.case_tag is CaseTag.CASE1
    assert data.xi1 == pytest.approx(A / 2.0, rel=1e-8)


def test_pure_step_derivative_at_zero(step_data):
    # a1 = 1 + A^2/(4 xi^2) gives a1'(iA/2) = -4i/A
    assert step_data.a1dot_xi1 == pytest.approx(-2j, rel=1e-6)
    assert a1_derivative(step_data, 1j) == pytest.approx(-2j, rel=1e-6)


@pytest.mark.parametrize("xi", [-3.0, -0.4, 0.1, 0.7, 2.5])
def test_reflection_product_identity(step_data, xi):
    r1, r2 = reflection_coefficients(step_data, xi)
    expected = 4.0 * xi * xi / (4.0 * xi * xi + step_data.A ** 2)
    assert 1.0 + r1 * r2 == pytest.approx(expected, abs=1e-14)
    assert r2 == pytest.approx(1j * step_data.A / (2.0 * xi))


def test_reflection_coefficients_continue_off_axis(step_data):
    r1, r2 = step_data.r1(0.5 + 0.2j), step_data.r2(0.5 + 0.2j)
    assert r2 == pytest.approx(1j / (0.5 + 0.2j))
    assert r1 * step_data.a1(0.5 + 0.2j) == pytest.approx(step_data.b_mirror(0.5 + 0.2j))


def test_reflectionless_case_two(reflectionless):
    assert reflectionless.case_tag is CaseTag.CASE2
    assert reflectionless.xi1 == pytest.approx(1.0, rel=1e-8)
    assert reflectionless.a11 == pytest.approx(-1j, abs=1e-6)
    assert reflectionless.a2dot0 == pytest.approx(1j, abs=1e-6)
    assert reflectionless.printed_a11 == pytest.approx(1j)
    assert reflectionless.printed_a2dot0 == pytest.approx(-1j)


def test_zero_b_gives_zero_reflection(reflectionless):
    assert reflection_coefficients(reflectionless, 0.8) == (0j, 0j)


def test_reflection_pole_at_origin(step_data):
    with pytest.raises(PoleError):
        reflection_coefficients(step_data, 0.0)


def test_norming_constant_must_be_unimodular():
    with pytest.raises(DomainError):
        pure_step_data(2.0, kappa=2.0)
    assert pure_step_data(2.0, kappa=1j).kappa == 1j


def test_profile_data_stay_on_the_axis(step_from_profile):
    with pytest.raises(DomainError):
        reflection_coefficients(step_from_profile, 0.5 + 0.1j)


def test_profile_data_match_closed_form(step_from_profile, step_data):
    assert step_from_profile.case_tag is CaseTag.CASE1
    assert step_from_profile.xi1 == pytest.approx(step_data.xi1, rel=1e-6)
    for xi in (-1.3, 0.4, 2.0):
        assert step_from_profile.r1(xi) == pytest.approx(step_data.r1(xi), rel=1e-7)
        assert step_from_profile.r2(xi) == pytest.approx(step_data.r2(xi), rel=1e-7)


def test_double_zero_of_a2_is_unsupported():
    data = ScatteringData(A=2.0, a1=lambda xi: 1.0 + 0j, a2=lambda xi: complex(xi) ** 2,
                          b=lambda xi: 0j, g=lambda xi: complex(xi) ** 2)
    assert data.case_tag is None
    with pytest.raises(UnsupportedDegeneracyError):
        classify_case(data)


def test_forced_case_skips_classification():
    data = ScatteringData(A=2.0, a1=lambda xi: 1.0 + 1.0 / complex(xi) ** 2, a2=lambda xi: 1.0 + 0j,
                          b=lambda xi: -1.0 / (1j * complex(xi)), g=lambda xi: complex(xi) ** 2 + 1.0,
                          source="pure-step")
    completed = complete(data, forced_case=CaseTag.CASE1)
    assert completed.case_tag is CaseTag.CASE1
    assert completed.a11 is None
    assert completed.xi1 == pytest.approx(1.0, rel=1e-8)


def test_auxiliary_seed_below_support(bump_profile):
    f1, f2 = auxiliary_f(bump_profile, -bump_profile.support - 5.0)
    assert f1 == 0
    assert f2 == pytest.approx(bump_profile.A / 2j)


def test_auxiliary_gives_unit_a2_for_step(step_profile):
    assert a2_from_auxiliary(step_profile) == pytest.approx(1.0, abs=1e-12)


def test_auxiliary_samples_match_pointwise(bump_profile):
    xs = [-10.0, -0.5, 0.0, 0.8]
    f1, f2 = auxiliary_samples(bump_profile, xs)
    for k, x in enumerate(xs):
        single = auxiliary_f(bump_profile, x)
        assert f1[k] == pytest.approx(single[0], abs=1e-9)
        assert f2[k] == pytest.approx(single[1], abs=1e-9)


def test_auxiliary_a2_matches_wronskian(bump_profile):
    from scattering.jost import wronskian_a2

    assert a2_from_auxiliary(bump_profile) == pytest.approx(wronskian_a2(bump_profile, 0.0), abs=1e-8)
