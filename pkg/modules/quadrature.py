"""
Complex Quadrature

Adaptive quadrature for complex integrands on real intervals, principal
value integrals with a simple pole, and Cauchy transforms with Plemelj
boundary values. All integrals go through scipy.integrate.quad, applied to
the real and imaginary parts separately.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from modules.errors import AmbiguityError, DomainError, RefinementError

logger = logging.getLogger(__name__)

# quad reports ier=2 when roundoff stops refinement; accept up to this
# multiple of the requested tolerance in that case.
ROUNDOFF_SLACK = 1e3


@dataclass(frozen=True)
class ContourInterval:
    """
    Oriented real interval, possibly semi-infinite.

    Args:
        lower (float): Lower endpoint, -inf allowed.
        upper (float): Upper endpoint, +inf allowed.
        decay_power (float): Assumed integrand decay |f| ~ |x|^-p on infinite
            ends, used for the analytic tail when a cutoff radius is set.
        left_to_right (bool): Orientation flag. False flips the sign.
    """

    lower: float
    upper: float
    decay_power: float = 2.0
    left_to_right: bool = True

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"interval lower {self.lower} must be below upper {self.upper}")
        if self.lower == math.inf or self.upper == -math.inf:
            raise DomainError("interval endpoints out of order")
        if not self.is_finite and not self.decay_power > 1.0:
            raise DomainError("semi-infinite interval needs a decay power > 1")

    @property
    def is_finite(self):
        return math.isfinite(self.lower) and math.isfinite(self.upper)

    @property
    def sign(self):
        return 1.0 if self.left_to_right else -1.0

    def contains(self, x):
        """True for x strictly inside the interval."""
        return self.lower < x < self.upper


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Tolerances for the adaptive kernels.

    Args:
        abs_tol (float): Absolute tolerance.
        rel_tol (float): Relative tolerance.
        max_depth (int): Refinement depth; maps to the quad subinterval limit.
        tail_cutoff (float, optional): Truncation radius for infinite ends.
            None uses the infinite-range transform of quad instead.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_depth: int = 30
    tail_cutoff: float = None

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("quadrature depth must be at least 1")
        if self.tail_cutoff is not None and not self.tail_cutoff > 0:
            raise DomainError("tail cutoff radius must be positive")

    @property
    def limit(self):
        return max(50, 20 * self.max_depth)

    def tolerance(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_SPEC = QuadratureSpec()


def _quad_part(g, a, b, spec, points=None):
    """Integrate a real function with quad and check the outcome."""
    kwargs = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.limit, full_output=1)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = points
    result = quad(g, a, b, **kwargs)
    value, error = result[0], result[1]
    if len(result) > 3:
        allowed = spec.tolerance(value)
        if "roundoff" in result[3]:
            allowed *= ROUNDOFF_SLACK
        if not error <= allowed:
            raise RefinementError(
                f"quadrature on [{a}, {b}] stopped at error {error:.3e}: {result[3].splitlines()[0]}",
                estimate=value, error=error)
        logger.debug("[Quadrature] accepted [%s, %s] with error %.3e (%s)", a, b, error,
                     result[3].splitlines()[0])
    return value, error


def _complex_quad(f, a, b, spec, points=None):
    re_value, re_error = _quad_part(lambda x: complex(f(x)).real, a, b, spec, points)
    im_value, im_error = _quad_part(lambda x: complex(f(x)).imag, a, b, spec, points)
    return complex(re_value, im_value), math.hypot(re_error, im_error)


def _truncated_tail(f, interval, spec):
    """Finite range plus analytic tails for a cutoff radius."""
    radius = spec.tail_cutoff
    p = interval.decay_power
    lower, upper = interval.lower, interval.upper
    tail = 0j
    if math.isinf(lower):
        start = -max(radius, abs(upper) + 1.0) if math.isfinite(upper) else -radius
        tail += complex(f(start)) * abs(start) / (p - 1.0)
        lower = start
    if math.isinf(upper):
        stop = max(radius, abs(lower) + 1.0)
        tail += complex(f(stop)) * stop / (p - 1.0)
        upper = stop
    return lower, upper, tail


def integrate_with_error(f, interval, spec=DEFAULT_SPEC, points=None):
    """
    Integrate a complex-valued function over an interval.

    Args:
        f (callable): Complex-valued function of a real variable.
        interval (ContourInterval): Integration range.
        spec (QuadratureSpec): Tolerances.
        points (list, optional): Interior breakpoints.

    Returns:
        tuple: (value, error estimate).
    """
    lower, upper = interval.lower, interval.upper
    tail = 0j
    if not interval.is_finite and spec.tail_cutoff is not None:
        lower, upper, tail = _truncated_tail(f, interval, spec)

    pieces = [lower]
    if points:
        pieces += sorted(p for p in points if lower < p < upper)
    pieces.append(upper)
    if math.isinf(pieces[0]) and math.isinf(pieces[-1]) and len(pieces) == 2:
        pieces = [pieces[0], 0.0, pieces[1]]

    value, error = tail, 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        part, part_error = _complex_quad(f, a, b, spec)
        value += part
        error = math.hypot(error, part_error)
    return interval.sign * value, error


def integrate(f, interval, spec=DEFAULT_SPEC, points=None):
    """
    Integrate a complex-valued function over an interval.

    Args:
        f (callable): Complex-valued function of a real variable.
        interval (ContourInterval): Integration range.
        spec (QuadratureSpec): Tolerances.
        points (list, optional): Interior breakpoints.

    Returns:
        complex: The integral.
    """
    return integrate_with_error(f, interval, spec, points)[0]


def pv_integrate(f, singularity, interval, spec=DEFAULT_SPEC):
    """
    Principal value of the integral of f across a simple pole.

    The symmetric excision window [c - eps, c + eps] is folded onto
    [0, eps], where f(c + s) + f(c - s) is regular, so no excision radius
    has to be driven to zero.

    Args:
        f (callable): Complex-valued function with a simple pole at c.
        singularity (float): Pole location c.
        interval (ContourInterval): Integration range; c must be interior.
        spec (QuadratureSpec): Tolerances.

    Returns:
        complex: The principal value.
    """
    c = float(singularity)
    if not interval.contains(c):
        raise DomainError(f"principal value singularity {c} is not interior to "
                          f"[{interval.lower}, {interval.upper}]")
    distances = [d for d in (c - interval.lower, interval.upper - c) if math.isfinite(d)]
    eps = 0.5 * min(distances) if distances else 1.0
    eps = min(eps, 1.0)

    value = 0j
    value += integrate(lambda s: complex(f(c + s)) + complex(f(c - s)),
                       ContourInterval(0.0, eps), spec)
    value += integrate(f, ContourInterval(interval.lower, c - eps, interval.decay_power), spec)
    value += integrate(f, ContourInterval(c + eps, interval.upper, interval.decay_power), spec)
    return interval.sign * value


def cauchy_transform(density, intervals, xi, spec=DEFAULT_SPEC, side=None, window=0.5):
    """
    (1/2 pi i) * sum over intervals of the integral of density(z)/(z - xi).

    Near the contour the density value at Re(xi) is subtracted on a local
    window and its contribution added back through the logarithm, so the
    remaining integrand is regular. On the contour the side flag selects
    the boundary value xi + i0 (side=+1) or xi - i0 (side=-1), which makes
    the Plemelj half-residue explicit.

    Args:
        density (callable): Complex density on the real line.
        intervals (list): ContourInterval pieces of the contour.
        xi (complex): Evaluation point.
        spec (QuadratureSpec): Tolerances.
        side (int, optional): +1 or -1 for boundary values on the contour.
        window (float): Half width of the subtraction window.

    Returns:
        complex: The Cauchy transform.
    """
    xi = complex(xi)
    xr = xi.real
    on_axis = xi.imag == 0.0
    total = 0j
    for interval in intervals:
        if on_axis and xr in (interval.lower, interval.upper):
            raise DomainError(f"Cauchy transform evaluated at interval endpoint {xr}")
        inside = interval.contains(xr)
        if on_axis and inside and side not in (1, -1):
            raise AmbiguityError(f"xi={xr} lies on the contour; pass side=+1 or side=-1")

        if not inside or abs(xi.imag) > window:
            total += integrate(lambda z: complex(density(z)) / (z - xi), interval, spec)
            continue

        w0 = max(interval.lower, xr - window)
        w1 = min(interval.upper, xr + window)
        rho = complex(density(xr))

        def regular(z, rho=rho, w0=w0, w1=w1):
            value = complex(density(z))
            if w0 <= z <= w1:
                value -= rho
            return value / (z - xi)

        # the ascending orientation is applied once below
        ascending = ContourInterval(interval.lower, interval.upper, interval.decay_power)
        part = integrate(regular, ascending, spec, points=[w0, xr, w1])
        if on_axis:
            log_part = complex(math.log(abs((w1 - xr) / (w0 - xr))), side * math.pi)
        else:
            log_part = np.log(w1 - xi) - np.log(w0 - xi)
        total += interval.sign * (part + rho * log_part)
    return total / (2j * math.pi)
