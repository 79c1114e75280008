"""
Jump Matrices

The jump of M on the real line, its two triangular factorizations, and
the jumps after each deformation: conjugation by delta (Tilde), opening
lenses onto the contour Upsilon (Hat), and removal of the singular points
by the Blaschke-Potapov factor (Regular).

Upsilon is made of straight segments leaving the real axis at angle alpha:
rays to the right of lambda1 and to the left of lambda3, and two lenses
over (lambda2, lambda1) and (lambda3, lambda2). All pieces are oriented
left to right; upper pieces carry Upsilon1 or Upsilon2 and their mirror
images the starred labels.
"""

import cmath
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from modules.errors import DomainError
from scattering.data import reflection_coefficients
from steepest_descent.phase import require_first_domain, t_theta
from steepest_descent.residues import regularized_reflections

logger = logging.getLogger(__name__)

ON_CONTOUR_TOL = 1e-9
DEFAULT_ANGLE = math.pi / 4
POLE_CLEARANCE = 0.9


class Stage(enum.Enum):
    ORIGINAL = "Original"
    TILDE = "Tilde"
    HAT = "Hat"
    REGULAR = "Regular"


def upper(entry):
    return np.array([[1.0, entry], [0.0, 1.0]], dtype=complex)


def lower(entry):
    return np.array([[1.0, 0.0], [entry, 1.0]], dtype=complex)


def _oscillation(xi, x, t, gamma):
    """exp(2i t theta(xi))."""
    return cmath.exp(2j * t_theta(complex(xi), x, t, gamma))


def original_jump(data, x, t, xi, gamma):
    """
    J = [[1 + r1 r2, -r2 e^{-2it theta}], [-r1 e^{2it theta}, 1]] on the real line.

    Args:
        data (ScatteringData): Scattering data.
        x (float): Position.
        t (float): Time.
        xi (float): Real, nonzero.
        gamma (float): Quartic dispersion coefficient.

    Returns:
        ndarray: 2x2 jump matrix.
    """
    xi = complex(xi)
    if xi.imag != 0.0 or xi == 0:
        raise DomainError(f"the original jump lives on the real line without 0, got {xi}")
    r1, r2 = reflection_coefficients(data, xi.real)
    e = _oscillation(xi, x, t, gamma)
    return np.array([[1.0 + r1 * r2, -r2 / e], [-r1 * e, 1.0]], dtype=complex)


def upper_lower_factors(data, x, t, xi, gamma):
    """(upper, lower) with upper @ lower = J."""
    r1, r2 = reflection_coefficients(data, complex(xi).real)
    e = _oscillation(xi, x, t, gamma)
    return upper(-r2 / e), lower(-r1 * e)


def lower_diag_upper_factors(data, x, t, xi, gamma):
    """(lower, diagonal, upper) with lower @ diagonal @ upper = J."""
    r1, r2 = reflection_coefficients(data, complex(xi).real)
    e = _oscillation(xi, x, t, gamma)
    d = 1.0 + r1 * r2
    return lower(-r1 * e / d), np.diag([d, 1.0 / d]), upper(-r2 / (e * d))


def tilde_jump(data, delta, x, t, xi):
    """
    Jump of M delta^{-sigma3} on the real line.

    On the cut of delta the lower-diagonal-upper splitting is used with the
    boundary values delta_-^{-2} and delta_+^{2}; elsewhere the
    upper-lower splitting with delta^{+-2}.
    """
    xi = complex(xi)
    if xi.imag != 0.0 or xi == 0:
        raise DomainError(f"the Tilde jump lives on the real line without 0, got {xi}")
    r1, r2 = reflection_coefficients(data, xi.real)
    e = _oscillation(xi, x, t, delta.geometry.gamma)
    if delta.on_contour(xi):
        plus, minus = delta.boundary_values(xi.real)
        d = 1.0 + r1 * r2
        return lower(-r1 * e / (d * minus ** 2)) @ upper(-r2 * plus ** 2 / (d * e))
    value = delta(xi.real)
    return upper(-r2 * value ** 2 / e) @ lower(-r1 * e / value ** 2)


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex
    label: str
    ray: bool = False

    def distance(self, z):
        """Distance from z to the segment (or to the ray from start through end)."""
        direction = self.end - self.start
        s = ((z - self.start) * direction.conjugate()).real / abs(direction) ** 2
        s = max(s, 0.0) if self.ray else min(max(s, 0.0), 1.0)
        return abs(z - (self.start + s * direction))


@dataclass(frozen=True)
class UpsilonContour:
    """
    Lens contour Upsilon for one ray.

    Args:
        geometry (PhaseGeometry): Ray with mu > 0.
        xi1 (float): Pole location, kept above the lens over 0.
        angle (float): Opening angle alpha.
        segments (tuple): Upper Segment pieces; lower ones are mirrors.
    """

    geometry: object
    xi1: float
    angle: float
    segments: tuple

    def pieces(self):
        mirrored = tuple(Segment(seg.start.conjugate(), seg.end.conjugate(), seg.label + "*", seg.ray)
                         for seg in self.segments)
        return self.segments + mirrored

    def label(self, xi):
        """
        Upsilon label of a point on the contour.

        Returns:
            str: 'Upsilon1', 'Upsilon2', 'Upsilon1*' or 'Upsilon2*'.
        """
        xi = complex(xi)
        if xi.imag == 0.0:
            raise DomainError(f"xi={xi} is on the real axis, not on Upsilon")
        candidates = [seg for seg in self.pieces() if (seg.label.endswith("*")) == (xi.imag < 0)]
        best = min(candidates, key=lambda seg: seg.distance(xi))
        scale = 1.0 + abs(xi)
        if best.distance(xi) > ON_CONTOUR_TOL * scale:
            raise DomainError(f"xi={xi} is not on Upsilon")
        return best.label

    def sample_points(self, per_piece=3, reach=2.0):
        """Interior points of every piece with their labels."""
        points = []
        for seg in self.pieces():
            direction = seg.end - seg.start
            for k in range(1, per_piece + 1):
                s = k / (per_piece + 1.0) * (reach if seg.ray else 1.0)
                points.append((seg.start + s * direction, seg.label))
        return points


def opening_angle(geometry, xi1, angle=DEFAULT_ANGLE):
    """Largest angle up to `angle` keeping the lens over 0 below POLE_CLEARANCE*xi1."""
    lam1, lam2, lam3 = geometry.saddles
    reach = min(-lam3, lam2)
    return min(angle, math.atan(POLE_CLEARANCE * xi1 / reach))


def build_upsilon(geometry, xi1, angle=DEFAULT_ANGLE):
    """
    Upsilon for the ray, with alpha shrunk so i*xi1 stays in Omega0.

    Args:
        geometry (PhaseGeometry): Ray with mu > 0.
        xi1 (float): Pole location.
        angle (float): Requested opening angle.

    Returns:
        UpsilonContour: The contour.
    """
    require_first_domain(geometry)
    lam1, lam2, lam3 = geometry.saddles
    alpha = opening_angle(geometry, xi1, angle)
    if alpha < angle:
        logger.info("[Jumps] opening angle shrunk to %.4g so i xi1 stays in Omega0", alpha)
    slope = math.tan(alpha)
    unit = cmath.exp(1j * alpha)
    right_apex = complex(0.5 * (lam1 + lam2), 0.5 * (lam1 - lam2) * slope)
    left_apex = complex(0.5 * (lam2 + lam3), 0.5 * (lam2 - lam3) * slope)
    far_left = complex(lam3) - unit.conjugate()
    segments = (
        Segment(complex(lam1), complex(lam1) + unit, "Upsilon1", ray=True),
        Segment(complex(lam2), right_apex, "Upsilon2"),
        Segment(right_apex, complex(lam1), "Upsilon2"),
        Segment(complex(lam3), left_apex, "Upsilon1"),
        Segment(left_apex, complex(lam2), "Upsilon1"),
        Segment(complex(lam3), far_left, "Upsilon2", ray=True),
    )
    return UpsilonContour(geometry=geometry, xi1=xi1, angle=alpha, segments=segments)


def _ray_jump(label, r1, r2, d2, e):
    """Jump on one Upsilon piece from reflection values, delta^2 and exp(2it theta)."""
    ratio = 1.0 + r1 * r2
    if label == "Upsilon2":
        return upper(-r2 * d2 / (ratio * e))
    if label == "Upsilon1":
        return lower(-r1 * e / d2)
    if label == "Upsilon1*":
        return upper(r2 * d2 / e)
    return lower(r1 * e / (ratio * d2))


def hat_jump(data, delta, contour, x, t, xi):
    """Jump of the lens-opened problem on Upsilon."""
    label = contour.label(xi)
    r1, r2 = reflection_coefficients(data, xi)
    e = _oscillation(xi, x, t, delta.geometry.gamma)
    return _ray_jump(label, r1, r2, delta(xi) ** 2, e)


def regular_jump(data, delta, contour, x, t, xi):
    """Hat jump with r1, r2 replaced by their regularized versions."""
    label = contour.label(xi)
    r1, r2 = regularized_reflections(data, xi)
    e = _oscillation(xi, x, t, delta.geometry.gamma)
    return _ray_jump(label, r1, r2, delta(xi) ** 2, e)


def jump_matrix(stage, x, t, xi, data, geometry=None, delta=None, contour=None):
    """
    Jump matrix of a deformation stage.

    Args:
        stage (Stage): Original, Tilde, Hat or Regular.
        x (float): Position.
        t (float): Time.
        xi (complex): Point on the stage's contour.
        data (ScatteringData): Scattering data.
        geometry (PhaseGeometry): Ray (gamma is read from it).
        delta (DeltaFunction): Needed from Tilde on.
        contour (UpsilonContour): Needed for Hat and Regular; built on demand.

    Returns:
        ndarray: 2x2 complex matrix.
    """
    stage = Stage(stage)
    if stage is Stage.ORIGINAL:
        gamma = geometry.gamma if geometry is not None else delta.geometry.gamma
        return original_jump(data, x, t, xi, gamma)
    if delta is None:
        raise DomainError(f"{stage.value} jumps need the delta function")
    if stage is Stage.TILDE:
        return tilde_jump(data, delta, x, t, xi)
    contour = contour or build_upsilon(delta.geometry, data.xi1)
    if stage is Stage.HAT:
        return hat_jump(data, delta, contour, x, t, xi)
    return regular_jump(data, delta, contour, x, t, xi)
