import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from modules.errors import DomainError
from modules.roots import cardano_roots, cubic_real_roots, discriminant


def _poly(c3, c1, c0, x):
    return c3 * x ** 3 + c1 * x + c0


def test_three_simple_roots():
    assert cubic_real_roots(1.0, -1.0, 0.0) == pytest.approx([-1.0, 0.0, 1.0], abs=1e-14)


def test_phase_cubic_at_zero_slope():
    gamma = 1.0 / 27.0
    roots = cubic_real_roots(32.0 * gamma, -2.0, 0.0)
    edge = 3.0 * math.sqrt(3.0) / 4.0
    assert roots == pytest.approx([-edge, 0.0, edge], abs=1e-12)
    assert edge == pytest.approx(1.0 / (4.0 * math.sqrt(gamma)))


def test_double_root_is_listed_twice():
    gamma = 1.0 / 27.0
    mu = math.sqrt(1.0 / (27.0 * gamma))
    roots = cubic_real_roots(32.0 * gamma, -2.0, mu)
    assert len(roots) == 3
    assert roots[1] == pytest.approx(0.75 * mu, abs=1e-8)
    assert roots[2] == pytest.approx(0.75 * mu, abs=1e-8)
    assert roots[0] == pytest.approx(-1.5 * mu, abs=1e-8)


def test_single_real_root():
    roots = cubic_real_roots(1.0, 1.0, 1.0)
    assert len(roots) == 1
    assert abs(_poly(1.0, 1.0, 1.0, roots[0])) < 1e-12


def test_zero_cubic_coefficient():
    with pytest.raises(DomainError):
        cubic_real_roots(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        cardano_roots(0.0, 1.0, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.5, 5.0), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0))
def test_roots_have_small_residual(c3, c1, c0):
    p, q = c1 / c3, c0 / c3
    scale = 4.0 * abs(p) ** 3 + 27.0 * q * q
    assume(scale > 1e-6 and abs(discriminant(c3, c1, c0)) > 1e-6 * scale)
    roots = cubic_real_roots(c3, c1, c0)
    assert roots == sorted(roots)
    assert len(roots) == (3 if discriminant(c3, c1, c0) > 0 else 1)
    coefficient = max(abs(c3), abs(c1), abs(c0))
    for root in roots:
        assert abs(_poly(c3, c1, c0, root)) < 1e-12 * coefficient * max(1.0, abs(root)) ** 3


@pytest.mark.parametrize("mu", [0.5, -0.3, 0.9])
def test_cardano_agrees_with_polished_roots(mu):
    c3, c1, c0 = 32.0 / 27.0, -2.0, mu
    radicals = sorted(root.real for root in cardano_roots(c3, c1, c0))
    assert all(abs(root.imag) < 1e-9 for root in cardano_roots(c3, c1, c0))
    assert radicals == pytest.approx(cubic_real_roots(c3, c1, c0), abs=1e-9)
