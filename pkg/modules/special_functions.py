"""
Special Functions

Complex Gamma, the parabolic cylinder function D_a(z) of complex order and
the erfc closed form used as an oracle for D_{-1}.
"""

import cmath
import logging
import math

import mpmath
import numpy as np
from scipy import special

from modules.errors import PoleError, PrecisionError

logger = logging.getLogger(__name__)

PCFD_DPS = 30
PCFD_CHECK_DPS = 45
PCFD_RTOL = 1e-10


def _is_gamma_pole(z):
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def complex_gamma(z):
    """
    Gamma function for complex argument.

    Args:
        z (complex): Argument, not a non-positive integer.

    Returns:
        complex: Gamma(z).
    """
    if _is_gamma_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    return complex(special.gamma(complex(z)))


def reciprocal_gamma(z):
    """1/Gamma(z), entire; exactly 0 at the poles of Gamma."""
    if _is_gamma_pole(z):
        return 0j
    return complex(special.rgamma(complex(z)))


def _pcfd(a, z, dps):
    with mpmath.workdps(dps):
        return complex(mpmath.pcfd(mpmath.mpc(a), mpmath.mpc(z)))


def parabolic_cylinder_D(a, z, check=True):
    """
    Parabolic cylinder function D_a(z).

    Solves D'' + (a + 1/2 - z^2/4) D = 0 and behaves like z^a exp(-z^2/4)
    for |arg z| < 3 pi / 4.

    Args:
        a (complex): Order.
        z (complex): Argument.
        check (bool): Re-evaluate at higher working precision and raise if
            the two values disagree.

    Returns:
        complex: D_a(z).
    """
    value = _pcfd(a, z, PCFD_DPS)
    if not cmath.isfinite(value):
        raise PrecisionError(f"D_{a}({z}) is not finite")
    if check:
        reference = _pcfd(a, z, PCFD_CHECK_DPS)
        scale = max(abs(reference), 1e-300)
        if abs(value - reference) > PCFD_RTOL * scale:
            raise PrecisionError(f"D_{a}({z}) unstable: {value} vs {reference}")
    return value


def d_minus_one(z):
    """Closed form D_{-1}(z) = exp(z^2/4) sqrt(pi/2) erfc(z/sqrt 2)."""
    z = complex(z)
    return complex(np.exp(z * z / 4.0) * math.sqrt(math.pi / 2.0) * special.erfc(z / math.sqrt(2.0)))
