"""
Residue Constants and Blaschke-Potapov Elements

Regularized reflection coefficients, the residue constants c1(x, t) at
i*xi1 and c0(mu) at 0, and the elements P12, P21 of the
Blaschke-Potapov factor that removes both singular points.
"""

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from modules.errors import DegenerateBPError, NonSimpleZeroError, PoleError
from scattering.data import CASE_THRESHOLD, reflection_coefficients

logger = logging.getLogger(__name__)

POLE_GUARD = 1e-10
BP_DENOMINATOR_TOL = 1e-14


def regularized_reflections(data, xi):
    """
    r1r = (xi - i xi1)/xi * r1 and r2r = xi/(xi - i xi1) * r2.

    Args:
        data (ScatteringData): Completed scattering data.
        xi (complex): Nonzero, away from i*xi1.

    Returns:
        tuple: (r1r, r2r).
    """
    xi = complex(xi)
    if xi == 0:
        raise PoleError("regularized reflections are not defined at xi = 0")
    pole = 1j * data.xi1
    if abs(xi - pole) < POLE_GUARD:
        raise PoleError("r2r has a pole at i xi1; use r1r_at_pole for r1r there")
    r1, r2 = reflection_coefficients(data, xi)
    return (xi - pole) / xi * r1, xi / (xi - pole) * r2


def r1r_at_pole(data):
    """r1r(i xi1) = conj(b(-conj z))/(z a1'(z)) at z = i xi1."""
    z = 1j * data.xi1
    return data.b_mirror(z) / (z * data.a1dot_xi1)


@dataclass(frozen=True)
class ResidueConstants:
    """
    Residue constants of the regularized problem on one ray.

    Args:
        xi1 (float): Pole location i*xi1.
        gamma (float): Quartic dispersion coefficient.
        kappa (complex): Norming constant.
        a1dot (complex): a1'(i xi1).
        delta_at_pole (complex): delta(i xi1).
        c0 (complex): A delta(0)^2 / (2i).
    """

    xi1: float
    gamma: float
    kappa: complex
    a1dot: complex
    delta_at_pole: complex
    c0: complex

    def c1(self, x, t):
        """kappa/(a1'(i xi1) delta(i xi1)^2) exp(-2 xi1 x + 2i xi1^2 t + 16i xi1^4 gamma t)."""
        k = self.xi1
        exponent = -2.0 * k * x + 2j * k * k * t + 16j * k ** 4 * self.gamma * t
        return self.kappa / (self.a1dot * self.delta_at_pole ** 2) * cmath.exp(exponent)


def residue_constants(data, delta):
    """
    c1(x, t) and c0(mu) for the data on delta's ray.

    x and t are not arguments: c1 comes back as ResidueConstants.c1(x, t),
    evaluated per point, while c0 and delta(i xi1) depend on the ray only.

    Args:
        data (ScatteringData): Completed scattering data.
        delta (DeltaFunction): Delta on the ray.

    Returns:
        ResidueConstants: The constants.
    """
    if abs(data.a1dot_xi1) < CASE_THRESHOLD:
        raise NonSimpleZeroError(f"a1'(i xi1) = {data.a1dot_xi1} vanishes")
    delta_pole = delta(1j * data.xi1)
    c0 = data.A * delta(0.0) ** 2 / 2j
    logger.debug("[Residues] c0=%s delta(i xi1)=%s", c0, delta_pole)
    return ResidueConstants(xi1=data.xi1, gamma=delta.geometry.gamma, kappa=data.kappa,
                            a1dot=data.a1dot_xi1, delta_at_pole=delta_pole, c0=c0)


def bp_elements(u, v):
    """
    P12 = u1 v1 / (u1 v2 - u2 v1) and P21 = -u2 v2 / (u1 v2 - u2 v1).

    Args:
        u (array_like): Pair (u1, u2).
        v (array_like): Pair (v1, v2).

    Returns:
        tuple: (P12, P21).
    """
    u1, u2 = complex(u[0]), complex(u[1])
    v1, v2 = complex(v[0]), complex(v[1])
    denominator = u1 * v2 - u2 * v1
    scale = max(abs(u1), abs(u2)) * max(abs(v1), abs(v2))
    if abs(denominator) <= BP_DENOMINATOR_TOL * max(scale, 1e-300):
        raise DegenerateBPError(f"u1 v2 - u2 v1 = {denominator} vanishes")
    return u1 * v1 / denominator, -u2 * v2 / denominator


def rough_vectors(xi1, c0, c1):
    """u, v with the regular solution replaced by the identity."""
    return np.array([1j * xi1, -c1]), np.array([c0, 1j * xi1])


def regular_leading(xi_r, lambdas, z):
    """M^r(z) ~ I - sum_j Xi^r_j / (lambda_j - z) to leading order."""
    total = np.eye(2, dtype=complex)
    for matrix, lam in zip(xi_r, lambdas):
        total = total - np.asarray(matrix, dtype=complex) / (lam - z)
    return total


def bp_vectors(m_pole, m_zero, xi1, c0, c1):
    """
    u = i xi1 M(i xi1)[:, 0] - c1 M(i xi1)[:, 1] and
    v = i xi1 M(0)[:, 1] + c0 M(0)[:, 0].
    """
    m_pole = np.asarray(m_pole, dtype=complex)
    m_zero = np.asarray(m_zero, dtype=complex)
    u = 1j * xi1 * m_pole[:, 0] - c1 * m_pole[:, 1]
    v = 1j * xi1 * m_zero[:, 1] + c0 * m_zero[:, 0]
    return u, v


def absorb_bp_prefactors(xi_tilde, lambdas, xi1):
    """
    Xi^r from the reduced matrices: (Xi^r)12 = lambda/(lambda - i xi1) (Xi~)12
    and (Xi^r)21 = (lambda - i xi1)/lambda (Xi~)21.
    """
    out = []
    for matrix, lam in zip(xi_tilde, lambdas):
        matrix = np.array(matrix, dtype=complex)
        matrix[0, 1] *= lam / (lam - 1j * xi1)
        matrix[1, 0] *= (lam - 1j * xi1) / lam
        out.append(matrix)
    return out


def bp_leading(xi_r, xi1, c0, lambdas):
    """
    Leading-order P12 and P21 from the regularized saddle matrices.

    P12 = -i c0/xi1 - sum (Xi^r)12/lambda
          + (i c0^2/xi1) sum (Xi^r)21 / (lambda (lambda - i xi1)),
    P21 = sum (Xi^r)21 / (lambda - i xi1).

    Args:
        xi_r (list): Xi^r_1, Xi^r_2, Xi^r_3 as 2x2 matrices.
        xi1 (float): Pole location i*xi1.
        c0 (complex): Residue constant at 0.
        lambdas (tuple): (lambda1, lambda2, lambda3).

    Returns:
        tuple: (P12, P21).
    """
    p12 = -1j * c0 / xi1
    p21 = 0j
    for matrix, lam in zip(xi_r, lambdas):
        m12, m21 = complex(matrix[0][1]), complex(matrix[1][0])
        p12 += -m12 / lam + 1j * c0 * c0 / xi1 * m21 / (lam * (lam - 1j * xi1))
        p21 += m21 / (lam - 1j * xi1)
    return p12, p21


def residue_limit(xi_r):
    """lim xi (M^r - I) = sum_j Xi^r_j to leading order."""
    return sum((np.asarray(m, dtype=complex) for m in xi_r), np.zeros((2, 2), dtype=complex))


def decay_ratio(constants, x, t):
    """|c1(x + 1, t)/c1(x, t)| = exp(-2 xi1)."""
    return abs(constants.c1(x + 1.0, t) / constants.c1(x, t)), math.exp(-2.0 * constants.xi1)
