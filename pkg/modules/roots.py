"""
Cubic Roots

Real roots of the depressed cubic c3 x^3 + c1 x + c0, as needed for the
stationary points of the quartic phase.
"""

import cmath
import logging
import math

import numpy as np

from modules.errors import DomainError

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-7
DOUBLE_ROOT_TOL = 1e-10


def _poly(c3, c1, c0, x):
    return (c3 * x * x + c1) * x + c0


def _newton_polish(c3, c1, c0, x, steps=8):
    """Newton iterations, keeping a step only if the residual shrinks."""
    best = x
    best_res = abs(_poly(c3, c1, c0, x))
    for _ in range(steps):
        slope = 3.0 * c3 * x * x + c1
        if slope == 0.0:
            break
        x = x - _poly(c3, c1, c0, x) / slope
        res = abs(_poly(c3, c1, c0, x))
        if res < best_res:
            best, best_res = x, res
        else:
            break
    return best


def discriminant(c3, c1, c0):
    """Discriminant of the monic form x^3 + p x + q, i.e. -(4p^3 + 27q^2)."""
    p, q = c1 / c3, c0 / c3
    return -(4.0 * p ** 3 + 27.0 * q ** 2)


def cubic_real_roots(c3, c1, c0):
    """
    All real roots of c3 x^3 + c1 x + c0, ascending.

    A double root is listed twice. When only one root is real it is the
    single entry of the result.

    Args:
        c3 (float): Cubic coefficient, nonzero.
        c1 (float): Linear coefficient.
        c0 (float): Constant coefficient.

    Returns:
        list: Real roots in ascending order.
    """
    if c3 == 0:
        raise DomainError("cubic coefficient must be nonzero")
    p, q = c1 / c3, c0 / c3
    scale = 4.0 * abs(p) ** 3 + 27.0 * q * q
    disc = discriminant(c3, c1, c0)

    if scale == 0.0:
        return [0.0, 0.0, 0.0]
    if abs(disc) <= DOUBLE_ROOT_TOL * scale:
        simple, double = 3.0 * q / p, -1.5 * q / p
        logger.debug("[Roots] double root at %.12g, simple root at %.12g", double, simple)
        return sorted([simple, double, double])

    candidates = np.roots([c3, 0.0, c1, c0])
    magnitude = max(1.0, max(abs(r) for r in candidates))
    real = [r.real for r in candidates if abs(r.imag) <= IMAG_TOL * magnitude]
    if disc > 0 and len(real) != 3:
        real = [r.real for r in candidates]
    elif disc < 0:
        real = [min(candidates, key=lambda r: abs(r.imag)).real]
    return sorted(_newton_polish(c3, c1, c0, r) for r in real)


def cardano_roots(c3, c1, c0):
    """
    Roots of c3 x^3 + c1 x + c0 from the Cardano radicals.

    Uses u = cbrt(-q/2 + sqrt(q^2/4 + p^3/27)) and the cube roots of unity
    w = (-1 + sqrt(3) i)/2, w^2. Kept as an independent cross-check.

    Returns:
        list: The three complex roots u_k + v_k with u_k v_k = -p/3.
    """
    if c3 == 0:
        raise DomainError("cubic coefficient must be nonzero")
    p, q = c1 / c3, c0 / c3
    root = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    u3 = -q / 2.0 + root
    if abs(u3) < abs(-q / 2.0 - root):
        u3 = -q / 2.0 - root
    if u3 == 0:
        return [0j, 0j, 0j]
    u = u3 ** (1.0 / 3.0)
    w = complex(-0.5, math.sqrt(3.0) / 2.0)
    roots = []
    for k in range(3):
        uk = u * w ** k
        roots.append(uk - p / (3.0 * uk))
    return roots
