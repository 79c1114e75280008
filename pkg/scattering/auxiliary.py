"""
Auxiliary Functions f1, f2

The x-part of the Lax pair at xi = 0 for the scaled first column of phi_-:
f1' = q0(x) f2 and f2' = -conj(q0(-x)) f1, with f1 = 0 and f2 = A/(2i)
below the perturbation support. Their values at the origin fix a2(0).
"""

import logging

import numpy as np

from modules.ode import ode_integrate
from scattering.jost import JOST_SPEC, SEED_MARGIN

logger = logging.getLogger(__name__)


def _rhs(profile):
    def rhs(x, y):
        return np.array([profile.q0(x, -1) * y[1], profile.r0(x, -1) * y[0]], dtype=complex)
    return rhs


def _seed(profile):
    return np.array([0.0, profile.A / 2j], dtype=complex)


def auxiliary_f(profile, x, spec=JOST_SPEC):
    """
    (f1(x), f2(x)) at t = 0.

    Args:
        profile (InitialProfile): Initial datum.
        x (float): Position.
        spec (QuadratureSpec): ODE tolerances.

    Returns:
        tuple: (f1, f2) as complex numbers.
    """
    start = -(profile.support + SEED_MARGIN)
    if x <= start:
        return 0j, profile.A / 2j
    f = ode_integrate(_rhs(profile), _seed(profile), (start, float(x)), spec)
    return complex(f[0]), complex(f[1])


def auxiliary_samples(profile, xs, spec=JOST_SPEC):
    """
    f1, f2 on an ascending grid in one integration pass.

    Returns:
        tuple: (f1 array, f2 array).
    """
    xs = np.asarray(xs, dtype=float)
    start = -(profile.support + SEED_MARGIN)
    f1 = np.zeros(xs.size, dtype=complex)
    f2 = np.full(xs.size, profile.A / 2j, dtype=complex)
    ahead = xs > start
    if np.any(ahead):
        inside = xs[ahead]
        final, samples = ode_integrate(_rhs(profile), _seed(profile), (start, inside[-1]), spec,
                                       samples_at=inside[:-1])
        values = np.array(samples + [final]) if len(samples) else np.array([final])
        f1[ahead], f2[ahead] = values[:, 0], values[:, 1]
    logger.debug("[Auxiliary] sampled %d points from x=%g", xs.size, start)
    return f1, f2


def a2_from_auxiliary(profile, spec=JOST_SPEC):
    """a2(0) = (4/A^2)(|f2(0)|^2 - |f1(0)|^2)."""
    f1, f2 = auxiliary_f(profile, 0.0, spec)
    return 4.0 / profile.A ** 2 * (abs(f2) ** 2 - abs(f1) ** 2)
