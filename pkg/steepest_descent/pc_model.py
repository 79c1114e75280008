"""
Parabolic Cylinder Local Model

Near each saddle the rescaled problem is solved explicitly with parabolic
cylinder functions. For a saddle with data (r1, r2, v), 1 + r1 r2 =
exp(-2 pi v), the matrix m solves m' + (i tau/2) sigma3 m = B m with
B = [[0, beta], [gamma, 0]], beta*gamma = v, and jumps by
[[1 + r1 r2, -r2], [-r1, 1]] across the real tau axis. The model is
m_hat = m P tau^{-iv sigma3} exp(i tau^2 sigma3/4), where the sector
factor P removes the real-axis jump; m_hat then jumps only on the four
rays arg tau = +-pi/4, +-3pi/4 and tends to I.

The lambda2 model is the conjugate mirror of the lambda1 construction fed
with the lambda2 data.
"""

import cmath
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from modules.errors import DomainError, RegimeError
from modules.special_functions import complex_gamma, parabolic_cylinder_D, reciprocal_gamma
from steepest_descent.jumps import lower, upper
from steepest_descent.phase import phase_theta

logger = logging.getLogger(__name__)

SQRT_2PI = math.sqrt(2.0 * math.pi)
RAY_TOL = 1e-12
QUADRATIC_SIGN = {1: 1, 2: -1, 3: 1}


class PhiMode(enum.Enum):
    CONSISTENT = "consistent"
    LITERAL = "literal"


def _check_saddle(s):
    if s not in (1, 2, 3):
        raise DomainError(f"saddle index must be 1, 2 or 3, got {s}")


def _scale(s, geometry, t):
    _check_saddle(s)
    if not t > 0:
        raise DomainError(f"local scaling needs t > 0, got {t}")
    c = geometry.curvature(s)
    if not c > 0:
        raise RegimeError(f"curvature factor of saddle {s} is {c:.6g}, not positive")
    return math.sqrt(4.0 * t * c)


def scaling_map(s, geometry, t, tau):
    """xi = lambda_s + tau / sqrt(4 t c_s)."""
    return geometry.saddle(s) + complex(tau) / _scale(s, geometry, t)


def inverse_scaling_map(s, geometry, t, xi):
    """tau = sqrt(4 t c_s) (xi - lambda_s)."""
    return (complex(xi) - geometry.saddle(s)) * _scale(s, geometry, t)


def local_phase_phi(s, geometry, t, tau, mode=PhiMode.CONSISTENT):
    """
    Remainder phase phi_s(tau).

    CONSISTENT: i t theta(xi(tau)) - sigma_s i tau^2/4 with sigma = +1 at
    lambda1, lambda3 and -1 at lambda2, so that
    exp(2i t theta) = exp(2 phi) exp(sigma_s i tau^2/2) exactly.
    LITERAL: the closed quartic polynomial in tau with t-dependent
    coefficients, evaluated term by term.
    """
    mode = PhiMode(mode)
    tau = complex(tau)
    if mode is PhiMode.CONSISTENT:
        xi = scaling_map(s, geometry, t, tau)
        theta = phase_theta(xi, geometry.mu, geometry.gamma)
        return 1j * t * theta - QUADRATIC_SIGN[s] * 1j * tau * tau / 4.0
    _check_saddle(s)
    g = geometry.gamma
    lam = geometry.saddle(s)
    c = geometry.curvature(s)
    return (-1j * g * tau ** 4 / (2.0 * t * c * c)
            - 4j * g * lam * tau ** 3 / math.sqrt(t * c ** 3)
            + 1j * tau * tau / (4.0 * t * c)
            - 1j * (16.0 * g * lam * lam - t) * lam * tau / math.sqrt(t * c)
            - 4.0 * g * lam ** 4 + 0.5 * lam * lam)


def pc_coefficients(s, r1r, r2r, v):
    """
    beta and gamma of the local model.

    beta = -sqrt(2 pi) e^{-pi v/2} e^{i pi/4} / (r1r Gamma(-iv)) and the
    jump-consistent gamma = sqrt(2 pi) e^{-pi v/2} e^{-i pi/4} / (r2r Gamma(iv)),
    so beta*gamma = v. gamma with the opposite sign is returned as well.
    At lambda2 all three are conjugated.

    Returns:
        tuple: (beta, gamma, gamma_printed).
    """
    _check_saddle(s)
    v = complex(v)
    if v == 0:
        return 0j, 0j, 0j
    damp = cmath.exp(-math.pi * v / 2.0)
    beta = -SQRT_2PI * damp * cmath.exp(0.25j * math.pi) * reciprocal_gamma(-1j * v) / complex(r1r)
    gamma = SQRT_2PI * damp * cmath.exp(-0.25j * math.pi) * reciprocal_gamma(1j * v) / complex(r2r)
    if s == 2:
        return beta.conjugate(), gamma.conjugate(), -gamma.conjugate()
    return beta, gamma, -gamma


@dataclass(frozen=True)
class LocalModelData:
    """
    Data of one local model.

    Args:
        saddle (int): s in {1, 2, 3}.
        lam (float): lambda_s.
        v (complex): v(lambda_s).
        chi (complex): chi_s(lambda_s).
        r1r (complex): Regularized r1 at lambda_s.
        r2r (complex): Regularized r2 at lambda_s.
        beta (complex): Model coefficient beta.
        gamma (complex): Jump-consistent gamma.
        gamma_printed (complex): gamma with the opposite sign.
        curvature (float): c_s.
        phi_mode (PhiMode): Remainder phase convention.
        v_all (tuple): v at the three saddles (for the conjugators).
    """

    saddle: int
    lam: float
    v: complex
    chi: complex
    r1r: complex
    r2r: complex
    beta: complex
    gamma: complex
    gamma_printed: complex
    curvature: float
    phi_mode: PhiMode = PhiMode.CONSISTENT
    v_all: tuple = (0j, 0j, 0j)

    @property
    def upper_weight(self):
        """iv/gamma, written without the Gamma-pole at v = 0."""
        v = self.v
        return (self.r2r * cmath.exp(0.25j * math.pi) * cmath.exp(math.pi * v / 2.0)
                * complex_gamma(1.0 + 1j * v) / SQRT_2PI)

    @property
    def lower_weight(self):
        """iv/beta, written without the Gamma-pole at v = 0."""
        v = self.v
        return (self.r1r * cmath.exp(-0.25j * math.pi) * cmath.exp(math.pi * v / 2.0)
                * complex_gamma(1.0 - 1j * v) / SQRT_2PI)


def local_model_data(s, geometry, exponents, r1r, r2r, phi_mode=PhiMode.CONSISTENT):
    """
    Assemble LocalModelData from the saddle exponents and regularized data.

    Args:
        s (int): Saddle index.
        geometry (PhaseGeometry): Ray.
        exponents (SaddleExponents): v and chi at the saddles.
        r1r (complex): r1r(lambda_s).
        r2r (complex): r2r(lambda_s).
        phi_mode (PhiMode): Remainder phase convention.

    Returns:
        LocalModelData: The model data.
    """
    v = exponents.v[s - 1]
    beta, gamma, printed = pc_coefficients(s, r1r, r2r, v)
    return LocalModelData(saddle=s, lam=geometry.saddle(s), v=v, chi=exponents.chi[s - 1],
                          r1r=complex(r1r), r2r=complex(r2r), beta=beta, gamma=gamma,
                          gamma_printed=printed, curvature=geometry.curvature(s),
                          phi_mode=PhiMode(phi_mode), v_all=tuple(exponents.v))


def _power(tau, exponent, side):
    """Principal tau**exponent; on the negative axis side picks arg = +-pi."""
    tau = complex(tau)
    arg = cmath.phase(tau)
    if tau.imag == 0.0 and tau.real < 0.0:
        arg = math.pi if side >= 0 else -math.pi
    return cmath.exp(exponent * complex(math.log(abs(tau)), arg))


def model_m(model, tau, side=None):
    """
    Parabolic-cylinder solution m(tau), before the sector factor.

    The upper formula is used for Im tau > 0 and the lower one for
    Im tau < 0; on the real axis side selects which.
    """
    tau = complex(tau)
    upper_half = tau.imag > 0 or (tau.imag == 0 and (side or 1) > 0)
    v = model.v
    a = 1j * v
    w12, w21 = model.upper_weight, model.lower_weight
    pi = math.pi
    if upper_half:
        z3 = tau * cmath.exp(-0.75j * pi)
        z1 = tau * cmath.exp(-0.25j * pi)
        m11 = cmath.exp(-0.75 * pi * v) * parabolic_cylinder_D(a, z3)
        m12 = -w12 * cmath.exp(0.25 * pi * (v - 1j)) * parabolic_cylinder_D(-a - 1.0, z1)
        m21 = w21 * cmath.exp(-0.75 * pi * (v + 1j)) * parabolic_cylinder_D(a - 1.0, z3)
        m22 = cmath.exp(0.25 * pi * v) * parabolic_cylinder_D(-a, z1)
    else:
        z1 = tau * cmath.exp(0.25j * pi)
        z3 = tau * cmath.exp(0.75j * pi)
        m11 = cmath.exp(0.25 * pi * v) * parabolic_cylinder_D(a, z1)
        m12 = -w12 * cmath.exp(-0.75 * pi * (v - 1j)) * parabolic_cylinder_D(-a - 1.0, z3)
        m21 = w21 * cmath.exp(0.25 * pi * (v + 1j)) * parabolic_cylinder_D(a - 1.0, z1)
        m22 = cmath.exp(-0.75 * pi * v) * parabolic_cylinder_D(-a, z3)
    return np.array([[m11, m12], [m21, m22]], dtype=complex)


def sector(tau, side=None):
    """
    Sector of tau: 'Omega0', 'Omega1', 'Omega2' or the starred mirrors.

    On a ray, side=+1 selects the Omega0 side and side=-1 the other one.
    On the real axis side selects the half-plane.
    """
    tau = complex(tau)
    if tau == 0:
        raise DomainError("the local model is not evaluated at tau = 0")
    arg = cmath.phase(tau)
    if tau.imag == 0.0:
        if side not in (1, -1):
            side = 1
        if tau.real > 0:
            return "Omega1" if side > 0 else "Omega1*"
        return "Omega2" if side > 0 else "Omega2*"
    quarter = math.pi / 4
    for ray, (zero_side, other) in {quarter: ("Omega0", "Omega1"), 3 * quarter: ("Omega0", "Omega2"),
                                    -quarter: ("Omega0*", "Omega1*"), -3 * quarter: ("Omega0*", "Omega2*")}.items():
        if abs(arg - ray) < RAY_TOL:
            if side not in (1, -1):
                raise DomainError(f"tau={tau} lies on a jump ray; pass side=+1 or side=-1")
            return zero_side if side > 0 else other
    if 0 < arg < quarter:
        return "Omega1"
    if quarter < arg < 3 * quarter:
        return "Omega0"
    if arg > 3 * quarter:
        return "Omega2"
    if -quarter < arg < 0:
        return "Omega1*"
    if -3 * quarter < arg < -quarter:
        return "Omega0*"
    return "Omega2*"


def sector_factor(name, r1, r2):
    """Factor P that makes m_hat continuous across the real axis."""
    ratio = 1.0 + r1 * r2
    if name == "Omega1":
        return lower(r1)
    if name == "Omega1*":
        return upper(-r2)
    if name == "Omega2":
        return upper(r2 / ratio)
    if name == "Omega2*":
        return lower(-r1 / ratio)
    return np.eye(2, dtype=complex)


def _model_hat(model, tau, side):
    tau = complex(tau)
    name = sector(tau, side)
    half = -1 if name.endswith("*") else 1
    m = model_m(model, tau, side=half)
    P = sector_factor(name, model.r1r, model.r2r)
    e = _power(tau, -1j * model.v, half) * cmath.exp(0.25j * tau * tau)
    return m @ P @ np.diag([e, 1.0 / e])


def pc_model_matrix(s, model, tau, side=None):
    """
    m_hat(tau) of saddle s.

    Args:
        s (int): Saddle index.
        model (LocalModelData): Model data of that saddle.
        tau (complex): Nonzero local variable.
        side (int, optional): +1 / -1 on a ray (Omega0 side / other side)
            or on the real axis (upper / lower half-plane).

    Returns:
        ndarray: 2x2 complex matrix.
    """
    _check_saddle(s)
    if s != 2:
        return _model_hat(model, tau, side)
    mirrored = -complex(tau).conjugate()
    return np.conj(_model_hat(model, mirrored, side))


def pc_jump(model, tau):
    """
    Jump of m_hat on the rays of the lambda1 (or lambda3) model.

    Upper-left ray: [[1, -r2/(1+r1r2) e^{-i tau^2/2} tau^{2iv}], [0, 1]];
    upper-right: [[1, 0], [-r1 e^{i tau^2/2} tau^{-2iv}, 1]];
    lower-right: [[1, r2 e^{-i tau^2/2} tau^{2iv}], [0, 1]];
    lower-left: [[1, 0], [r1/(1+r1r2) e^{i tau^2/2} tau^{-2iv}, 1]].
    """
    tau = complex(tau)
    r1, r2, v = model.r1r, model.r2r, model.v
    ratio = 1.0 + r1 * r2
    grow = cmath.exp(0.5j * tau * tau) * _power(tau, -2j * v, 1)
    arg = cmath.phase(tau)
    quarter = math.pi / 4
    if abs(arg - 3 * quarter) < RAY_TOL:
        return upper(-r2 / ratio / grow)
    if abs(arg - quarter) < RAY_TOL:
        return lower(-r1 * grow)
    if abs(arg + quarter) < RAY_TOL:
        return upper(r2 / grow)
    if abs(arg + 3 * quarter) < RAY_TOL:
        return lower(r1 / ratio * grow)
    raise DomainError(f"tau={tau} is not on a jump ray")


def large_tau_coefficient(model):
    """lim tau (m_hat - I) = -i [[0, beta], [-gamma, 0]] for the lambda1 structure."""
    return -1j * np.array([[0.0, model.beta], [-model.gamma, 0.0]], dtype=complex)


def lambda_conjugator(s, model, geometry, t, tau=0.0):
    """
    eta_s with Lambda_s = exp(eta_s sigma3).

    lambda1: chi + phi + (i/2) v1 ln(c2 / (4t c1 c3));
    lambda2: chi + phi - (i/2) v3 ln(1/(4t c3)) - (i/2) v2 ln(c2/c1);
    lambda3: chi + phi + (i/2) v3 ln(c2 / (4t c3 c1)).
    """
    c1, c2, c3 = (geometry.curvature(k) for k in (1, 2, 3))
    v1, v2, v3 = model.v_all
    eta = model.chi + local_phase_phi(s, geometry, t, tau, model.phi_mode)
    if s == 1:
        return eta + 0.5j * v1 * math.log(c2 / (4.0 * t * c1 * c3))
    if s == 2:
        return eta - 0.5j * v3 * math.log(1.0 / (4.0 * t * c3)) - 0.5j * v2 * math.log(c2 / c1)
    return eta + 0.5j * v3 * math.log(c2 / (4.0 * t * c3 * c1))


def _imaginary_power(base, exponent):
    """base**exponent for real positive base."""
    return cmath.exp(exponent * math.log(base))


def xi_leading(s, model, geometry, t):
    """
    Leading matrix Xi_s of the local contribution and Xi^r_s = -Xi_s/sqrt(t).

    Xi_1 = -i/(2 sqrt c1) [[0, beta e^{2(chi+phi)} F^{iv}],
                           [-gamma e^{-2(chi+phi)} F^{-iv}, 0]], F = c2/(4t c1 c3);
    Xi_3 has the same form with v3; Xi_2 uses F2 = 1/(4t c2) with the
    correction (4t c1)^{iv2} (1/(4t c3))^{-iv3}. beta and gamma_printed enter
    with their conventional signs; phi is taken at tau = 0.

    Returns:
        tuple: (Xi, Xi_r) as 2x2 arrays.
    """
    c1, c2, c3 = (geometry.curvature(k) for k in (1, 2, 3))
    v1, v2, v3 = model.v_all
    v = model.v
    beta, gamma = model.beta, model.gamma_printed
    exponent = 2.0 * (model.chi + local_phase_phi(s, geometry, t, 0.0, model.phi_mode))
    if s in (1, 3):
        F = c2 / (4.0 * t * c1 * c3)
        up = beta * cmath.exp(exponent) * _imaginary_power(F, 1j * v)
        down = -gamma * cmath.exp(-exponent) * _imaginary_power(F, -1j * v)
    else:
        F = 1.0 / (4.0 * t * c2)
        correction = _imaginary_power(4.0 * t * c1, 1j * v2) * _imaginary_power(1.0 / (4.0 * t * c3), -1j * v3)
        up = beta * cmath.exp(exponent) * _imaginary_power(F, -1j * v) / correction
        down = -gamma * cmath.exp(-exponent) * _imaginary_power(F, 1j * v) * correction
    prefactor = -1j / (2.0 * math.sqrt(model.curvature))
    xi = prefactor * np.array([[0.0, up], [down, 0.0]], dtype=complex)
    return xi, -xi / math.sqrt(t)
