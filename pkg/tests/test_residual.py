import cmath
import math

import numpy as np
import pytest

from asymptotics.soliton import soliton_field
from modules.errors import DomainError
from simulator.residual import central_weights, pde_residual, pde_terms


def test_low_order_weights():
    assert [float(w) for w in central_weights(1, 2)] == pytest.approx([-0.5, 0.0, 0.5])
    assert [float(w) for w in central_weights(2, 2)] == pytest.approx([1.0, -2.0, 1.0])
    assert len(central_weights(4, 8)) == 11


def test_weights_need_even_order():
    with pytest.raises(DomainError):
        central_weights(1, 3)
    with pytest.raises(DomainError):
        central_weights(0, 2)


def test_zero_field():
    assert pde_residual(lambda x, t: 0, 0.3, 0.1, 0.5) == 0


def test_soliton_solves_the_equation():
    field = soliton_field(2.0, math.pi / 3.0, 0.1)
    assert abs(pde_residual(field, 0.7, 0.4, 0.1)) < 1e-6


def test_quartic_term_is_needed():
    field = soliton_field(2.0, math.pi / 3.0, 0.1)
    nls, quartic = pde_terms(field, 0.7, 0.4)
    assert abs(nls) > 1e-3
    assert pde_residual(field, 0.7, 0.4, 0.1, include_quartic=False) == pytest.approx(nls)
    assert abs(nls - 0.1 * quartic) < 1e-6


def _clearance(x, t, A, alpha, gamma):
    """Smallest |1 - E| at x and at the mirrored point -x."""
    rate = 0.5 * A * A + A ** 4 * gamma
    return min(abs(1.0 - cmath.exp(-A * y + 1j * (rate * t + alpha))) for y in (x, -x))


@pytest.mark.parametrize("A, gamma, alpha", [(2.0, 0.1, math.pi / 3.0), (1.0, 1.0 / 27.0, 0.0)])
def test_soliton_residual_at_random_points(A, gamma, alpha):
    rng = np.random.default_rng(20250)
    field = soliton_field(A, alpha, gamma)
    worst, checked = 0.0, 0
    while checked < 100:
        x, t = rng.uniform(-4.0, 4.0), rng.uniform(0.0, 2.0)
        if _clearance(x, t, A, alpha, gamma) < 0.5:
            continue
        worst = max(worst, abs(pde_residual(field, x, t, gamma)))
        checked += 1
    assert worst < 1e-6


@pytest.mark.parametrize("order, steps", [(2, (0.02, 0.01, 0.005)), (4, (0.08, 0.04, 0.02))])
def test_residual_shrinks_with_the_stencil_order(order, steps):
    field = soliton_field(2.0, math.pi / 3.0, 0.1)
    residuals = [abs(pde_residual(field, 0.7, 0.4, 0.1, h=h, order=order)) for h in steps]
    slope = np.polyfit(np.log(steps), np.log(residuals), 1)[0]
    assert slope == pytest.approx(order, abs=0.3)
