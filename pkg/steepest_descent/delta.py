"""
Delta Function

delta(xi) = exp((1/2 pi i) int_C ln(1 + r1 r2)(z) / (z - xi) dz) over
C = (-inf, lambda3) U (lambda2, lambda1), oriented left to right, so that
delta_+ = delta_- (1 + r1 r2) on C and delta -> 1 at infinity.

The logarithm L = ln(1 + r1 r2) is split as (L - l) + l with l the
continuous piecewise-linear interpolant that equals L at the finite
endpoints: l1 rises from 0 at lambda3 - 1 to L(lambda3), and l2 joins
L(lambda2) to L(lambda1). The Cauchy integral of l has a closed form, and
L - l vanishes at every endpoint, which keeps the regular parts chi_s of
the three product forms finite at the saddles.
"""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from modules.errors import AssumptionViolationError, BranchError, DomainError, PoleError
from modules.quadrature import DEFAULT_SPEC, ContourInterval, cauchy_transform, integrate
from scattering.data import integration_spec
from steepest_descent.phase import require_first_domain

logger = logging.getLogger(__name__)

ENDPOINT_GUARD = 1e-8
WINDING_SAMPLES = 200
FAR_LEFT = 1e3


def log_weight(data, zeta):
    """
    Principal ln(1 + r1 r2) at a real point.

    Args:
        data (ScatteringData): Scattering data.
        zeta (float): Real, nonzero.

    Returns:
        complex: The logarithm.
    """
    r1, r2 = data.r1(zeta), data.r2(zeta)
    w = 1.0 + r1 * r2
    if w.imag == 0.0 and w.real <= 0.0:
        raise BranchError(f"1 + r1 r2 = {w.real:.6g} is non-positive at xi = {zeta}")
    return complex(np.log(w))


def _side_log(w, sign):
    """ln w; a negative real w is read as w + i*sign*0."""
    w = complex(w)
    if w == 0:
        raise PoleError("logarithm of zero")
    if w.imag == 0.0 and w.real < 0.0:
        return complex(math.log(-w.real), sign * math.pi)
    return complex(np.log(w))


def _winding(data, geometry, reach=FAR_LEFT):
    """
    Continuous arguments of 1 + r1 r2 along both pieces of C.

    Returns:
        tuple: (Delta(lambda1), Delta(lambda2), Delta(lambda3)).
    """
    lam1, lam2, lam3 = geometry.saddles
    far = lam3 - np.geomspace(reach, 1e-9, WINDING_SAMPLES)
    left = np.append(far, lam3)
    right = np.linspace(lam2, lam1, WINDING_SAMPLES)

    deltas = []
    for grid in (left, right):
        args = np.unwrap([cmath.phase(1.0 + data.r1(z) * data.r2(z)) for z in grid])
        if np.max(np.abs(args)) >= math.pi:
            raise AssumptionViolationError(
                f"arg(1 + r1 r2) leaves (-pi, pi) on [{grid[0]:.4g}, {grid[-1]:.4g}]")
        deltas.append(args)
    return float(deltas[1][-1]), float(deltas[1][0]), float(deltas[0][-1])


@dataclass(frozen=True)
class DeltaFunction:
    """
    Evaluator of delta on one ray.

    Args:
        data (ScatteringData): Scattering data.
        geometry (PhaseGeometry): Three stationary points with mu > 0.
        logs (tuple): L(lambda1), L(lambda2), L(lambda3).
        winding (tuple): Continuous arguments Delta at the three saddles.
        spec (QuadratureSpec): Tolerances of the regular integrals.
    """

    data: object
    geometry: object
    logs: tuple
    winding: tuple
    spec: object = DEFAULT_SPEC

    @property
    def v(self):
        """v(lambda_s) = -L(lambda_s)/(2 pi) for s = 1, 2, 3."""
        return tuple(-L / (2.0 * math.pi) for L in self.logs)

    @property
    def intervals(self):
        lam1, lam2, lam3 = self.geometry.saddles
        return [ContourInterval(-math.inf, lam3, decay_power=3.0), ContourInterval(lam2, lam1)]

    def _ell(self, z):
        """(l1(z), l2(z)) extended linearly off their supports."""
        lam1, lam2, lam3 = self.geometry.saddles
        L1, L2, L3 = self.logs
        return L3 * (z - lam3 + 1.0), L2 + (L1 - L2) * (z - lam2) / (lam1 - lam2)

    def subtracted(self, z):
        """L(z) - l(z) on C; vanishes at the finite endpoints."""
        lam1, lam2, lam3 = self.geometry.saddles
        value = log_weight(self.data, z)
        l1, l2 = self._ell(z)
        if lam3 - 1.0 <= z <= lam3:
            value -= l1
        elif lam2 <= z <= lam1:
            value -= l2
        return value

    def _check_point(self, xi):
        for lam in self.geometry.saddles:
            if abs(xi - lam) < ENDPOINT_GUARD:
                raise DomainError(f"delta is not evaluated within {ENDPOINT_GUARD} of lambda={lam}")
        return xi

    def _closed_part(self, xi, side):
        lam1, lam2, lam3 = self.geometry.saddles
        L1, L2, L3 = self.logs
        l1, l2 = self._ell(xi)
        sign = -(side or 1)
        total = l1 * _side_log(lam3 - xi, sign) + L3
        # l1 vanishes where its second logarithm does
        if abs(lam3 - 1.0 - xi) >= ENDPOINT_GUARD:
            total -= l1 * _side_log(lam3 - 1.0 - xi, sign)
        total += l2 * (_side_log(lam1 - xi, sign) - _side_log(lam2 - xi, sign)) + (L1 - L2)
        return total / (2j * math.pi)

    def on_contour(self, xi):
        """True for real xi inside C."""
        lam1, lam2, lam3 = self.geometry.saddles
        xi = complex(xi)
        return xi.imag == 0.0 and (xi.real < lam3 or lam2 < xi.real < lam1)

    def log_delta(self, xi, side=None):
        """
        ln delta(xi).

        Args:
            xi (complex): Evaluation point, off the endpoints.
            side (int, optional): +1 / -1 for the boundary values on C.

        Returns:
            complex: The logarithm.
        """
        xi = self._check_point(complex(xi))
        regular = cauchy_transform(self.subtracted, self.intervals, xi, self.spec, side=side)
        return regular + self._closed_part(xi, side)

    def __call__(self, xi, side=None):
        return complex(np.exp(self.log_delta(xi, side)))

    def boundary_values(self, xi):
        """(delta_+(xi), delta_-(xi)) for real xi on C."""
        return self(xi, side=1), self(xi, side=-1)

    def product_log(self, s, xi, side=None):
        """
        Singular part of the s-th product form of delta.

        s=1: iv1 ln(xi - lambda1) - iv1 Ln((xi - lambda2)/(xi - lambda3))
        s=2: iv3 ln(xi - lambda3) - iv2 Ln((xi - lambda2)/(xi - lambda1))
        s=3: iv3 ln(xi - lambda3) - iv3 Ln((xi - lambda2)/(xi - lambda1))
        """
        lam1, lam2, lam3 = self.geometry.saddles
        iv1, iv2, iv3 = (1j * v for v in self.v)
        xi = complex(xi)
        side = side or 1
        if s == 1:
            return (iv1 * _side_log(xi - lam1, side)
                    - iv1 * _side_log((xi - lam2) / (xi - lam3), side))
        ratio = _side_log((xi - lam2) / (xi - lam1), -side)
        if s == 2:
            return iv3 * _side_log(xi - lam3, side) - iv2 * ratio
        if s == 3:
            return iv3 * _side_log(xi - lam3, side) - iv3 * ratio
        raise DomainError(f"saddle index must be 1, 2 or 3, got {s}")

    def chi(self, s, xi=None, side=None):
        """
        Regular factor chi_s(xi) = ln delta(xi) - product_log(s, xi).

        At xi = lambda_s (the default) the singular logarithms cancel and
        the limit is returned.
        """
        if xi is None or abs(complex(xi) - self.geometry.saddle(s)) < ENDPOINT_GUARD:
            return self.chi_at_saddle(s)
        return self.log_delta(xi, side) - self.product_log(s, xi, side)

    def chi_regularized(self, s, xi=None):
        """
        chi_s(xi) from integrals with saddle values of L subtracted.

        (lambda3 - 1, lambda3) carries L(lambda3), (lambda2, lambda1) carries
        L(lambda1) for s=1, L(lambda2) for s=2 and nothing for s=3. Each
        constant integrates to a pair of logarithms, and the ones singular
        at lambda_s cancel against the product form in closed form.

        Args:
            s (int): Saddle index.
            xi (complex, optional): Off the real axis, or lambda_s (the default).

        Returns:
            complex: chi_s(xi).
        """
        lam1, lam2, lam3 = self.geometry.saddles
        L1, L2, L3 = self.logs
        iv1, _, iv3 = (1j * v for v in self.v)
        lam = self.geometry.saddle(s)
        xi = complex(lam if xi is None else xi)
        if xi.imag == 0.0:
            if abs(xi.real - lam) >= ENDPOINT_GUARD:
                raise DomainError(f"real xi = {xi.real} is only admitted at lambda{s} = {lam}")
            xi = complex(lam)

        edge = lam3 - 1.0
        pieces = (
            (ContourInterval(-math.inf, edge, decay_power=3.0), 0j),
            (ContourInterval(edge, lam3), L3),
            (ContourInterval(lam2, lam1), {1: L1, 2: L2, 3: 0j}[s]),
        )
        regular = 0j
        for interval, constant in pieces:
            regular += integrate(lambda z, c=constant: (log_weight(self.data, z) - c) / (z - xi),
                                 interval, self.spec, points=[xi.real])
        regular /= 2j * math.pi

        log = cmath.log
        if s == 1:
            return regular + iv3 * (log(xi - lam3) - log(xi - edge)) - iv1 * log(xi - lam3)
        if s == 2:
            return regular - iv3 * log(xi - edge)
        return regular - iv3 * log(xi - edge) + iv3 * (log(xi - lam2) - log(xi - lam1))

    def _regular_at(self, lam):
        total = 0j
        for interval in self.intervals:
            total += integrate(lambda z: self.subtracted(z) / (z - lam), interval, self.spec,
                               points=[self.geometry.saddle(3) - 1.0])
        return total / (2j * math.pi)

    def chi_at_saddle(self, s):
        """chi_s(lambda_s) from the cancelled singular terms."""
        lam1, lam2, lam3 = self.geometry.saddles
        L1, L2, L3 = self.logs
        iv1, iv2, iv3 = (1j * v for v in self.v)
        lam = self.geometry.saddle(s)
        l1, l2 = self._ell(lam)
        regular = self._regular_at(lam)
        if s == 1:
            closed = l1 * (math.log(lam1 - lam3) - math.log(lam1 - lam3 + 1.0)) + L3 + L1 - L2
            return regular + closed / (2j * math.pi) - iv1 * math.log(lam1 - lam3)
        if s == 2:
            closed = l1 * (math.log(lam2 - lam3) - math.log(lam2 - lam3 + 1.0)) + L3 + L1 - L2
            return regular + closed / (2j * math.pi) - iv3 * math.log(lam2 - lam3)
        closed = L3 + l2 * (math.log(lam1 - lam3) - math.log(lam2 - lam3)) + L1 - L2
        return (regular + closed / (2j * math.pi)
                + iv3 * (math.log(lam2 - lam3) - math.log(lam1 - lam3)))


@dataclass(frozen=True)
class SaddleExponents:
    """
    Exponents at the three saddles.

    Args:
        v (tuple): v(lambda_s), s = 1, 2, 3.
        chi (tuple): chi_s(lambda_s).
        delta_arg (tuple): Continuous arguments Delta(lambda_s).
        delta (DeltaFunction): Source evaluator, for chi_s away from the saddle.
    """

    v: tuple
    chi: tuple
    delta_arg: tuple
    delta: DeltaFunction = None

    def chi_at(self, s, xi):
        return self.delta.chi(s, xi)


def build_delta(data, geometry, spec=DEFAULT_SPEC):
    """
    DeltaFunction for data on a ray with three stationary points.

    Args:
        data (ScatteringData): Scattering data.
        geometry (PhaseGeometry): Ray with mu > 0.
        spec (QuadratureSpec): Tolerances.

    Returns:
        DeltaFunction: The evaluator.
    """
    require_first_domain(geometry)
    spec = integration_spec(data, spec)
    winding = _winding(data, geometry, spec.tail_cutoff or FAR_LEFT)
    logs = []
    for lam, arg in zip(geometry.saddles, winding):
        w = 1.0 + data.r1(lam) * data.r2(lam)
        logs.append(complex(math.log(abs(w)), arg))
    delta = DeltaFunction(data=data, geometry=geometry, logs=tuple(logs), winding=winding, spec=spec)
    logger.info("[Delta] mu=%.6g v=(%s)", geometry.mu, ", ".join(f"{v:.6g}" for v in delta.v))
    return delta


def saddle_exponents(data, geometry, spec=DEFAULT_SPEC, delta=None):
    """
    v(lambda_s), chi_s(lambda_s) and Delta(lambda_s).

    Raises AssumptionViolationError when |Im v| reaches 1/2.
    """
    delta = delta or build_delta(data, geometry, spec)
    v = delta.v
    for s, value in enumerate(v, start=1):
        if abs(value.imag) >= 0.5:
            raise AssumptionViolationError(f"|Im v(lambda{s})| = {abs(value.imag):.4g} is not below 1/2")
    chi = tuple(delta.chi_at_saddle(s) for s in (1, 2, 3))
    logger.debug("[Delta] chi=%s", chi)
    return SaddleExponents(v=v, chi=chi, delta_arg=delta.winding, delta=delta)
