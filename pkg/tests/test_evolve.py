import math

import numpy as np
import pytest

from asymptotics.soliton import q_soliton
from modules.errors import DomainError, StabilityError
from scattering.profile import pure_step
from simulator.evolve import evolve, far_field_phase_rate, stability_limit
from simulator.grid import grid_from_function, smoothed_step


def test_zero_field_stays_zero():
    grid = grid_from_function(lambda x: 0.0, 2.0, 0.1)
    result = evolve(grid, 0.5, 0.1)
    assert result.time == 0.5
    assert np.all(result.values == 0)


def test_step_above_the_bound_is_rejected():
    grid = smoothed_step(pure_step(2.0, 0.1), 4.0, 0.05)
    bound = stability_limit(grid, 0.1)
    assert bound == pytest.approx(1.0 / (12800.0 * 0.1), rel=1e-5)
    with pytest.raises(StabilityError):
        evolve(grid, 0.1, 0.1, dt=10.0 * bound)


def test_far_field_rates():
    assert far_field_phase_rate(2.0, 0.1) == pytest.approx(0.0, abs=1e-12)
    A, gamma = 1.0, 0.1
    assert far_field_phase_rate(A, gamma, partner="local") == pytest.approx(
        -(A ** 2 + 6.0 * gamma * A ** 4), rel=1e-6)
    with pytest.raises(DomainError):
        far_field_phase_rate(1.0, 0.1, partner="mirror")


def test_argument_checks():
    grid = grid_from_function(lambda x: 0.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        evolve(grid, 0.1, 0.0)
    with pytest.raises(DomainError):
        evolve(grid, 0.1, 0.1, snapshots=[0.2])


def test_soliton_is_transported():
    A, alpha, gamma = 2.0, math.pi, 0.1
    grid = grid_from_function(lambda x: q_soliton(x, 0.0, A, alpha, gamma), 10.0, 0.02)
    middle, final = evolve(grid, 0.1, gamma, snapshots=[0.05])
    assert (middle.time, final.time) == (0.05, 0.1)
    exact = np.array([q_soliton(x, 0.1, A, alpha, gamma) for x in final.x])
    assert np.max(np.abs(final.values - exact)) < 1e-3
    assert final.values[-1] == pytest.approx(grid.values[-1])


def test_evolution_reverses():
    A, alpha, gamma = 2.0, math.pi, 0.1
    grid = grid_from_function(lambda x: q_soliton(x, 0.0, A, alpha, gamma), 10.0, 0.02)
    forward = evolve(grid, 0.05, gamma)
    back = evolve(forward, 0.0, gamma)
    assert back.time == 0.0
    assert back.max_deviation(grid) < 1e-4


def test_step_tails_are_conserved():
    A, gamma = 2.0, 0.1
    grid = smoothed_step(pure_step(A, gamma), 4.0, 0.05)
    rate = far_field_phase_rate(A, gamma)
    times = [0.1, 0.25, 0.5]
    for t, snapshot in zip(times, evolve(grid, 0.5, gamma, snapshots=times[:-1])):
        assert snapshot.time == t
        assert abs(snapshot.values[0] - grid.values[0]) < 1e-8
        assert abs(snapshot.values[-1] - grid.values[-1] * np.exp(1j * rate * t)) < 1e-6
