"""
Field Grids

Uniform grids symmetric about 0 holding samples of q(x, t). The point
count is odd so that x and -x are both grid points and the nonlocal
partner r(x) = -conj(q(-x)) is a reversed copy.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from modules.errors import DomainError

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
SMOOTHING_WIDTHS = 10


@dataclass(frozen=True)
class FieldGrid:
    """
    Samples of q on x_k = -L + k h, k = 0..N, N even.

    Args:
        x (ndarray): Grid points.
        values (ndarray): Complex samples.
        h (float): Spacing.
        time (float): Time of the samples.
    """

    x: np.ndarray
    values: np.ndarray
    h: float
    time: float = 0.0

    def __post_init__(self):
        if len(self.x) != len(self.values):
            raise DomainError("grid points and values differ in length")
        if len(self.x) % 2 != 1:
            raise DomainError(f"a symmetric grid needs an odd point count, got {len(self.x)}")
        if np.max(np.abs(self.x + self.x[::-1])) > SYMMETRY_TOL * max(1.0, abs(self.x[-1])):
            raise DomainError("grid is not symmetric about 0")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("grid values must be finite")

    @property
    def n_intervals(self):
        return len(self.x) - 1

    @property
    def half_width(self):
        return float(self.x[-1])

    def partner(self):
        """r(x) = -conj(q(-x)) on the same grid."""
        return -np.conj(self.values[::-1])

    def with_values(self, values, time):
        return FieldGrid(x=self.x, values=np.asarray(values, dtype=complex), h=self.h, time=time)

    def max_deviation(self, other):
        return float(np.max(np.abs(self.values - other.values)))

    def rows(self):
        """(t, x, q) rows for long-format output."""
        return [[self.time, float(x), complex(q)] for x, q in zip(self.x, self.values)]


def symmetric_points(half_width, h):
    """x_k = -L + k h with N = 2L/h even."""
    if not (half_width > 0 and h > 0):
        raise DomainError(f"grid needs positive half width and spacing, got L={half_width}, h={h}")
    half = int(round(half_width / h))
    if abs(half * h - half_width) > 1e-9 * half_width:
        raise DomainError(f"half width {half_width} is not a multiple of h={h}")
    return h * np.arange(-half, half + 1, dtype=float)


def grid_from_function(fn, half_width, h, time=0.0):
    """Sample fn(x) on the symmetric grid."""
    x = symmetric_points(half_width, h)
    values = np.array([complex(fn(float(point))) for point in x], dtype=complex)
    return FieldGrid(x=x, values=values, h=h, time=time)


def smoothed_step(profile, half_width, h, widths=SMOOTHING_WIDTHS):
    """
    Initial grid for a step-like profile, with the jump at 0 replaced by a
    tanh ramp of width `widths`*h.

    Args:
        profile (InitialProfile): Step plus perturbation.
        half_width (float): L.
        h (float): Spacing.
        widths (int): Ramp width in grid spacings, at least 10.

    Returns:
        FieldGrid: The sampled profile.
    """
    if widths < SMOOTHING_WIDTHS:
        raise DomainError(f"step smoothing needs at least {SMOOTHING_WIDTHS} grid spacings, got {widths}")
    width = widths * h

    def smoothed(x):
        return 0.5 * profile.A * (1.0 + math.tanh(x / width)) + profile.p(x)

    logger.info("[Simulator] step smoothed over width %.4g", width)
    return grid_from_function(smoothed, half_width, h)
