"""
Phase Function and Stationary Points

theta(xi, mu) = xi*mu - xi^2 + 8*gamma*xi^4 with mu = x/t. The stationary
points solve theta'(xi) = mu - 2 xi + 32 gamma xi^3 = 0; for
mu^2 < 1/(27 gamma) there are three of them and the steepest descent
analysis runs around each.
"""

import enum
import logging
import math
from dataclasses import dataclass

from modules.errors import DomainError, RegimeError
from modules.roots import cubic_real_roots

logger = logging.getLogger(__name__)

EPS_GUARD = 1e-3
ROOT_RESIDUAL = 1e-10
DOUBLE_ROOT_REL = 1e-12
SIGN_BAND = 1e-12


class Regime(enum.Enum):
    ONE_REAL = "OneReal"
    DOUBLE_ROOT = "DoubleRoot"
    THREE_REAL = "ThreeReal"


def phase_theta(xi, mu, gamma, order=0):
    """
    theta(xi, mu) or one of its xi-derivatives.

    Args:
        xi (complex): Spectral point.
        mu (float): Ray slope x/t.
        gamma (float): Quartic dispersion coefficient.
        order (int): 0 for theta, 1..4 for the derivatives.

    Returns:
        complex: The requested value.
    """
    if order == 0:
        return xi * mu - xi * xi + 8.0 * gamma * xi ** 4
    if order == 1:
        return mu - 2.0 * xi + 32.0 * gamma * xi ** 3
    if order == 2:
        return -2.0 + 96.0 * gamma * xi * xi
    if order == 3:
        return 192.0 * gamma * xi
    if order == 4:
        return 192.0 * gamma + 0.0 * xi
    if order > 4:
        return 0.0 * xi
    raise DomainError(f"derivative order must be non-negative, got {order}")


def t_theta(xi, x, t, gamma):
    """t*theta(xi, x/t) = xi x - xi^2 t + 8 gamma xi^4 t, finite at t = 0."""
    return xi * x - xi * xi * t + 8.0 * gamma * xi ** 4 * t


def critical_slope(gamma):
    """sqrt(1/(27 gamma)), the ray slope where two stationary points merge."""
    return math.sqrt(1.0 / (27.0 * gamma))


@dataclass(frozen=True)
class PhaseGeometry:
    """
    Stationary points of theta on one ray.

    Args:
        mu (float): Ray slope.
        gamma (float): Quartic dispersion coefficient.
        regime (Regime): Number of distinct real stationary points.
        lambdas (tuple): Real stationary points, ascending.
        curvatures (tuple): 48 gamma lambda^2 - 1 for each entry of lambdas.
        saddles (tuple): (lambda1, lambda2, lambda3) in ThreeReal, else ().
    """

    mu: float
    gamma: float
    regime: Regime
    lambdas: tuple
    curvatures: tuple
    saddles: tuple = ()

    def saddle(self, s):
        """lambda_s for s in {1, 2, 3}."""
        if self.regime is not Regime.THREE_REAL:
            raise RegimeError(f"saddle labels need three real stationary points, regime is {self.regime.value}")
        if s not in (1, 2, 3):
            raise DomainError(f"saddle index must be 1, 2 or 3, got {s}")
        return self.saddles[s - 1]

    def curvature(self, s):
        """
        Positive curvature factor c_s used by the local scaling.

        c1 = 48 gamma lambda1^2 - 1, c2 = 1 - 48 gamma lambda2^2 and
        c3 = 48 gamma lambda3^2 - 1.
        """
        raw = 48.0 * self.gamma * self.saddle(s) ** 2 - 1.0
        return -raw if s == 2 else raw

    @property
    def in_first_domain(self):
        return self.regime is Regime.THREE_REAL and self.mu > 0

    def as_dict(self):
        return {"mu": self.mu, "gamma": self.gamma, "regime": self.regime.value,
                "lambdas": list(self.lambdas), "saddles": list(self.saddles)}


def _label(roots, mu):
    """
    (lambda1, lambda2, lambda3) from ascending roots.

    lambda3 is the root whose sign differs from the other two, lambda2 the
    smaller of the remaining two in magnitude. At mu = 0 the middle root is
    lambda2.
    """
    low, mid, high = roots
    if mu >= 0:
        return high, mid, low
    return low, mid, high


def stationary_points(mu, gamma, allow_boundary=False):
    """
    Real roots of theta'(xi) = 0 with their regime and labels.

    Args:
        mu (float): Ray slope.
        gamma (float): Positive dispersion coefficient.
        allow_boundary (bool): Accept mu within EPS_GUARD of 0 or of
            +-sqrt(1/(27 gamma)).

    Returns:
        PhaseGeometry: The geometry of the ray.
    """
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    mu = float(mu)
    slope = critical_slope(gamma)
    if not allow_boundary and (abs(mu) < EPS_GUARD or abs(abs(mu) - slope) < EPS_GUARD):
        raise RegimeError(f"mu={mu} is within {EPS_GUARD} of 0 or of the critical slope {slope:.6g}")

    gap = mu * mu - slope * slope
    if abs(gap) <= DOUBLE_ROOT_REL * slope * slope:
        double, simple = 0.75 * mu, -1.5 * mu
        lambdas = tuple(sorted({double, simple}))
        regime = Regime.DOUBLE_ROOT
    elif gap > 0:
        lambdas = tuple(cubic_real_roots(32.0 * gamma, -2.0, mu)[:1])
        regime = Regime.ONE_REAL
    else:
        lambdas = tuple(cubic_real_roots(32.0 * gamma, -2.0, mu))
        regime = Regime.THREE_REAL

    for lam in lambdas:
        residual = abs(phase_theta(lam, mu, gamma, 1))
        if residual > ROOT_RESIDUAL * (1.0 + abs(mu)):
            raise RegimeError(f"stationary point {lam} has residual {residual:.3e}")

    curvatures = tuple(48.0 * gamma * lam * lam - 1.0 for lam in lambdas)
    saddles = _label(lambdas, mu) if regime is Regime.THREE_REAL else ()
    logger.debug("[Phase] mu=%.6g regime=%s lambdas=%s", mu, regime.value, lambdas)
    return PhaseGeometry(mu=mu, gamma=gamma, regime=regime, lambdas=lambdas,
                         curvatures=curvatures, saddles=saddles)


def require_first_domain(geometry):
    """Raise unless the geometry has three real points with mu > 0."""
    if not geometry.in_first_domain:
        raise RegimeError(f"expected three stationary points with mu > 0, got "
                          f"{geometry.regime.value} at mu={geometry.mu}")
    return geometry


def sign_of_re_phi(xi, geometry):
    """
    Sign of Re(i theta(xi)), 0 inside a 1e-12 band.

    Args:
        xi (complex): Spectral point.
        geometry (PhaseGeometry): Ray.

    Returns:
        int: +1, -1 or 0.
    """
    value = -complex(phase_theta(complex(xi), geometry.mu, geometry.gamma)).imag
    if abs(value) <= SIGN_BAND:
        return 0
    return 1 if value > 0 else -1
