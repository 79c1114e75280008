"""
Exact One-Soliton

The reflectionless solution on the step background, its Riemann-Hilbert
matrix, and the reconstruction of q from the large-xi limits of a
solution M (optionally after the Blaschke-Potapov factor).
"""

import cmath
import logging

import mpmath
import numpy as np

from modules.errors import DomainError, SingularPointError

logger = logging.getLogger(__name__)

POLE_TOL = 1e-12


def _exponential(x, t, A, alpha, gamma):
    """E = exp(-A x + i A^2 t/2 + i A^4 gamma t + i alpha)."""
    return cmath.exp(-A * x + 0.5j * A * A * t + 1j * A ** 4 * gamma * t + 1j * alpha)


def _denominator(x, t, A, alpha, gamma):
    denominator = 1.0 - _exponential(x, t, A, alpha, gamma)
    if abs(denominator) < POLE_TOL:
        raise SingularPointError(f"soliton pole at x={x}, t={t} (alpha={alpha})", location=(x, t))
    return denominator


def q_soliton(x, t, A, alpha, gamma):
    """
    q(x, t) = A / (1 - exp(-A x + i A^2 t/2 + i A^4 gamma t + i alpha)).

    Args:
        x (float): Position.
        t (float): Time.
        A (float): Step height, A > 0.
        alpha (float): Phase of the norming constant.
        gamma (float): Quartic dispersion coefficient.

    Returns:
        complex: The soliton value.
    """
    if not A > 0:
        raise DomainError(f"soliton needs A > 0, got {A}")
    return A / _denominator(x, t, A, alpha, gamma)


def soliton_field(A, alpha, gamma):
    """q_soliton as a callable (x, t) evaluated in mpmath arithmetic."""
    if not A > 0:
        raise DomainError(f"soliton needs A > 0, got {A}")

    def field(x, t):
        A_mp = mpmath.mpf(A)
        exponent = -A_mp * x + mpmath.mpc(0, 1) * (A_mp ** 2 * t / 2 + A_mp ** 4 * gamma * t + alpha)
        return A_mp / (1 - mpmath.exp(exponent))

    return field


def soliton_f1(x, t, A, alpha, gamma):
    """f1 = (A/2i) / (1 - E), so that q = 2i f1."""
    return A / 2j / _denominator(x, t, A, alpha, gamma)


def soliton_rh_matrix(x, t, xi, A, alpha, gamma):
    """
    M(x, t, xi) of the exact soliton.

    [[(xi + f1)/(xi - iA/2), f1/xi], [-g/(xi - iA/2), (xi - g)/xi]] with
    f1 = f1(x, t) and g = conj(f1(-x, t)).
    """
    xi = complex(xi)
    pole = 0.5j * A
    if xi == 0 or xi == pole:
        raise DomainError(f"M has poles at 0 and i A/2, got xi={xi}")
    f1 = soliton_f1(x, t, A, alpha, gamma)
    g = soliton_f1(-x, t, A, alpha, gamma).conjugate()
    return np.array([[(xi + f1) / (xi - pole), f1 / xi],
                     [-g / (xi - pole), (xi - g) / xi]], dtype=complex)


def large_xi_limit(matrix_fn, xi=1e8):
    """xi (M(xi) - I) at one large imaginary xi, first order in 1/xi."""
    xi = 1j * xi
    return xi * (np.asarray(matrix_fn(xi), dtype=complex) - np.eye(2))


def reconstruct_q(m12_limit, m21_limit, side, xi1=0.0, p12=0j, p21=0j):
    """
    q from the residue at infinity of the regular solution and the
    Blaschke-Potapov elements.

    x > 0: q = -2 xi1 P12 + 2i lim xi M12.
    x < 0: q = -2 xi1 conj(P21) - 2i conj(lim xi M21), where the limits and
    P21 are those at -x.

    Args:
        m12_limit (complex): lim xi M12.
        m21_limit (complex): lim xi M21 (taken at -x for side < 0).
        side (int): +1 for x > 0, -1 for x < 0.
        xi1 (float): Pole location; 0 drops the Blaschke-Potapov part.
        p12 (complex): P12(x, t).
        p21 (complex): P21(-x, t).

    Returns:
        complex: q(x, t).
    """
    if side > 0:
        return -2.0 * xi1 * complex(p12) + 2j * complex(m12_limit)
    if side < 0:
        return -2.0 * xi1 * complex(p21).conjugate() - 2j * complex(m21_limit).conjugate()
    raise DomainError("reconstruct_q needs side = +1 (x > 0) or -1 (x < 0)")
