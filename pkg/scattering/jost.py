"""
Jost Solutions

Jost solutions of the x-part of the Lax pair, phi' = (-i xi sigma3 + Q) phi,
with Q = [[0, q0(x)], [-conj(q0(-x)), 0]]. Outside the perturbation support
Q equals its asymptotic value, so the exact asymptotic solution
L(xi) exp(-i xi sigma3 x) is seeded at x = -(support + margin) (for phi_-)
or x = support + margin (for phi_+) and the ODE is integrated to x = 0.

Column analyticity: phi_-^(1) and phi_+^(2) extend to Im xi >= 0,
phi_+^(1) and phi_-^(2) to Im xi <= 0.
"""

import logging

import numpy as np

from modules.errors import DomainError, SingularNormalizationError
from modules.ode import ode_integrate
from modules.quadrature import QuadratureSpec

logger = logging.getLogger(__name__)

JOST_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12)
SEED_MARGIN = 1.0

SIGMA3 = np.diag([1.0 + 0j, -1.0 + 0j])

# (side, column) -> sign of Im xi allowed for that column
_HALF_PLANE = {("minus", 1): 1, ("plus", 2): 1, ("plus", 1): -1, ("minus", 2): -1}


def potential_matrix(profile, x, side):
    """Q(x) using one-sided values at x = 0 (side -1 for x <= 0, +1 for x >= 0)."""
    return np.array([[0.0, profile.q0(x, side)], [profile.r0(x, side), 0.0]], dtype=complex)


def asymptotic_matrix(xi, A, side):
    """
    L_-(xi) for side 'minus', L_+(xi) for side 'plus'.

    L_+ = [[1, A/(2i xi)], [0, 1]],  L_- = [[1, 0], [A/(2i xi), 1]].
    """
    if xi == 0:
        raise SingularNormalizationError("L(xi) is singular at xi = 0")
    c = A / (2j * xi)
    if side == "plus":
        return np.array([[1.0, c], [0.0, 1.0]], dtype=complex)
    return np.array([[1.0, 0.0], [c, 1.0]], dtype=complex)


def _seed_column(xi, A, side, column, x0, scaled):
    """
    Column of L(xi) exp(-i xi sigma3 x0), optionally multiplied by xi.

    The scaled singular columns (phi_-^(1), phi_+^(2)) stay regular at xi = 0.
    """
    phase = np.exp(-1j * xi * x0) if column == 1 else np.exp(1j * xi * x0)
    singular = (side, column) in (("minus", 1), ("plus", 2))
    if singular:
        weight = xi if scaled else 1.0
        if not scaled and xi == 0:
            raise SingularNormalizationError("Jost column normalization is singular at xi = 0")
        c = A / 2j if scaled else A / (2j * xi)
        vec = np.array([weight, c], dtype=complex) if side == "minus" else np.array([c, weight], dtype=complex)
    else:
        weight = xi if scaled else 1.0
        vec = np.array([weight, 0.0], dtype=complex) if column == 1 else np.array([0.0, weight], dtype=complex)
    return vec * phase


def _lax_rhs(profile, xi, side_sign):
    def rhs(x, y):
        Q = potential_matrix(profile, x, side_sign)
        return (-1j * xi * SIGMA3 + Q) @ y
    return rhs


def _start(profile, side):
    reach = profile.support + SEED_MARGIN
    return -reach if side == "minus" else reach


def jost_column(profile, xi, side, column, scaled=False, x_end=0.0, spec=JOST_SPEC):
    """
    One Jost column at x_end (default the origin).

    Args:
        profile (InitialProfile): Initial datum.
        xi (complex): Spectral parameter in the column's half-plane.
        side (str): 'minus' or 'plus'.
        column (int): 1 or 2.
        scaled (bool): Return xi * column (regular at xi = 0 for the
            singular columns, and zero for the regular ones).
        x_end (float): End of integration; must lie on the column's side of
            the seed point.

    Returns:
        ndarray: Column vector of length 2.
    """
    xi = complex(xi)
    sign = _HALF_PLANE[(side, column)]
    if xi.imag * sign < 0:
        raise DomainError(f"column {column} of phi_{side} is not defined at Im xi = {xi.imag}")
    x0 = _start(profile, side)
    seed = _seed_column(xi, profile.A, side, column, x0, scaled)
    side_sign = -1 if side == "minus" else 1
    return ode_integrate(_lax_rhs(profile, xi, side_sign), seed, (x0, x_end), spec)


def jost_at_origin(profile, xi, spec=JOST_SPEC):
    """
    Both Jost matrices at x = 0 for real nonzero xi.

    Args:
        profile (InitialProfile): Initial datum.
        xi (float): Real, nonzero spectral parameter.

    Returns:
        tuple: (phi_minus, phi_plus), each a 2x2 complex matrix with det 1.
    """
    xi = complex(xi)
    if xi == 0:
        raise SingularNormalizationError("Jost solutions are not normalized at xi = 0")
    if xi.imag != 0:
        raise DomainError("both Jost columns are only defined together on the real axis")
    phi_minus = np.column_stack([jost_column(profile, xi, "minus", 1, spec=spec),
                                 jost_column(profile, xi, "minus", 2, spec=spec)])
    phi_plus = np.column_stack([jost_column(profile, xi, "plus", 1, spec=spec),
                                jost_column(profile, xi, "plus", 2, spec=spec)])
    return phi_minus, phi_plus


def scattering_matrix(profile, xi, spec=JOST_SPEC):
    """
    S(xi) = phi_+(0)^{-1} phi_-(0) on the real axis.

    Args:
        profile (InitialProfile): Initial datum.
        xi (float): Real, nonzero spectral parameter.

    Returns:
        ndarray: 2x2 matrix [[a1, b], [-conj(b(-xi)), a2]].
    """
    phi_minus, phi_plus = jost_at_origin(profile, xi, spec)
    S = np.linalg.solve(phi_plus, phi_minus)
    logger.debug("[Jost] S(%s) det=%s", xi, np.linalg.det(S))
    return S


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def wronskian_a1(profile, xi, spec=JOST_SPEC):
    """a1(xi) = det[phi_-^(1), phi_+^(2)] for Im xi >= 0, xi != 0."""
    return complex(_det(jost_column(profile, xi, "minus", 1, spec=spec),
                        jost_column(profile, xi, "plus", 2, spec=spec)))


def wronskian_g(profile, xi, spec=JOST_SPEC):
    """g(xi) = xi^2 a1(xi), regular at xi = 0, for Im xi >= 0."""
    return complex(_det(jost_column(profile, xi, "minus", 1, scaled=True, spec=spec),
                        jost_column(profile, xi, "plus", 2, scaled=True, spec=spec)))


def wronskian_a2(profile, xi, spec=JOST_SPEC):
    """a2(xi) = det[phi_+^(1), phi_-^(2)] for Im xi <= 0, including xi = 0."""
    return complex(_det(jost_column(profile, xi, "plus", 1, spec=spec),
                        jost_column(profile, xi, "minus", 2, spec=spec)))


def wronskian_b_scaled(profile, xi, spec=JOST_SPEC):
    """xi * b(xi) = det[phi_-^(2), xi phi_+^(2)] on the real axis, regular at 0."""
    return complex(_det(jost_column(profile, xi, "minus", 2, spec=spec),
                        jost_column(profile, xi, "plus", 2, scaled=True, spec=spec)))
