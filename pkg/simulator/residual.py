"""
PDE Residual

Pointwise left side of the focusing nonlocal equation

    q_t + (i/2) q_xx - i q^2 r - gamma H[q] = 0,
    H[q] = -i q_xxxx + 6i r q_x^2 + 4i q q_x r_x + 8i r q q_xx
           + 2i q^2 r_xx - 6i r^2 q^3,

with r(x, t) = -conj(q(-x, t)). Derivatives come from central difference
stencils evaluated in mpmath working precision, so the residual of an exact
solution is limited by the truncation error of the stencil only.
"""

import logging
from functools import lru_cache

import mpmath

from modules.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-3
DEFAULT_ORDER = 8
WORKING_DPS = 40


@lru_cache(maxsize=None)
def central_weights(derivative, order, dps=WORKING_DPS):
    """
    Weights w_k, k = -p..p, with sum w_k f(x + k h) / h^m = f^(m)(x) + O(h^order).

    Args:
        derivative (int): m >= 1.
        order (int): Even accuracy order.
        dps (int): Working precision of the Vandermonde solve.

    Returns:
        tuple: 2p + 1 mpmath numbers.
    """
    if derivative < 1 or order < 2 or order % 2:
        raise DomainError(f"central stencils need m >= 1 and an even order, got m={derivative}, order={order}")
    half = (derivative + 1) // 2 + order // 2 - 1
    offsets = range(-half, half + 1)
    with mpmath.workdps(dps):
        size = 2 * half + 1
        vandermonde = mpmath.matrix(size, size)
        rhs = mpmath.matrix(size, 1)
        for row in range(size):
            for col, k in enumerate(offsets):
                vandermonde[row, col] = mpmath.mpf(k) ** row
        rhs[derivative] = mpmath.factorial(derivative)
        weights = mpmath.lu_solve(vandermonde, rhs)
        return tuple(weights[i] for i in range(size))


def _derivative(fn, point, derivative, h, order):
    weights = central_weights(derivative, order)
    half = (len(weights) - 1) // 2
    step = mpmath.mpf(h)
    total = mpmath.mpc(0)
    for k, weight in zip(range(-half, half + 1), weights):
        if weight:
            total += weight * fn(point + k * step)
    return total / step ** derivative


def pde_terms(field, x, t, h=DEFAULT_STEP, order=DEFAULT_ORDER):
    """
    The two parts of the residual at (x, t).

    Args:
        field (callable): q(x, t); evaluated at mpmath reals.
        x (float): Position.
        t (float): Time.
        h (float): Difference step in x and t.
        order (int): Accuracy order of the stencils.

    Returns:
        tuple: (q_t + (i/2) q_xx - i q^2 r, H[q]) as complex numbers.
    """
    with mpmath.workdps(WORKING_DPS):
        x, t = mpmath.mpf(x), mpmath.mpf(t)

        def q_of_x(y):
            return mpmath.mpc(field(y, t))

        def r_of_x(y):
            return -mpmath.conj(mpmath.mpc(field(-y, t)))

        q = q_of_x(x)
        r = r_of_x(x)
        q_t = _derivative(lambda s: mpmath.mpc(field(x, s)), t, 1, h, order)
        q_x = _derivative(q_of_x, x, 1, h, order)
        q_xx = _derivative(q_of_x, x, 2, h, order)
        q_xxxx = _derivative(q_of_x, x, 4, h, order)
        r_x = _derivative(r_of_x, x, 1, h, order)
        r_xx = _derivative(r_of_x, x, 2, h, order)

        i = mpmath.mpc(0, 1)
        nls = q_t + i * q_xx / 2 - i * q * q * r
        quartic = (-i * q_xxxx + 6 * i * r * q_x ** 2 + 4 * i * q * q_x * r_x
                   + 8 * i * r * q * q_xx + 2 * i * q * q * r_xx - 6 * i * r * r * q ** 3)
        return complex(nls), complex(quartic)


def pde_residual(field, x, t, gamma, h=DEFAULT_STEP, order=DEFAULT_ORDER, include_quartic=True):
    """
    Left side of the equation at (x, t).

    Args:
        field (callable): q(x, t).
        x (float): Position.
        t (float): Time.
        gamma (float): Quartic dispersion coefficient.
        h (float): Difference step.
        order (int): Stencil accuracy order.
        include_quartic (bool): False drops the gamma H term.

    Returns:
        complex: The residual.
    """
    nls, quartic = pde_terms(field, x, t, h, order)
    return nls - gamma * quartic if include_quartic else nls
