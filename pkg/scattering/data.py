"""
Scattering Data

ScatteringData bundles the evaluable entries of S(xi) = [[a1, b],
[-conj(b(-conj xi)), a2]], the case tag, the zero i*xi1 of a1, the Case 2
constants and the norming constant kappa. Instances are immutable; the
builders fill derived fields through dataclasses.replace.
"""

import enum
import logging
import math

import numpy as np
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

from modules.errors import (DomainError, InconsistentDataError, NonSimpleZeroError,
                            PoleError, UnsupportedDegeneracyError)
from modules.quadrature import DEFAULT_SPEC, ContourInterval, pv_integrate
from scattering import jost

logger = logging.getLogger(__name__)

CASE_THRESHOLD = 1e-6
DERIVATIVE_STEP = 1e-4
XI1_STEP = 1e-5
XI1_CHECK = 1e-6
# Jost data are integrated only up to this |xi|; the rest is an analytic tail
PROFILE_TAIL = 100.0


class CaseTag(enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"


@dataclass(frozen=True)
class ScatteringData:
    """
    Evaluable scattering data.

    Args:
        A (float): Step height.
        a1 (callable): a1(xi), Im xi >= 0, xi != 0.
        a2 (callable): a2(xi), Im xi <= 0 (including xi = 0).
        b (callable): b(xi) on the real axis.
        g (callable): xi^2 a1(xi), entire in the closed upper half-plane.
        case_tag (CaseTag): Case1 (a2(0) != 0) or Case2 (a2(0) = 0).
        xi1 (float): The zero of a1 sits at i*xi1.
        a11 (complex): lim xi a1(xi) at 0 (Case 2).
        a2dot0 (complex): a2'(0) (Case 2).
        a1dot_xi1 (complex): a1'(i xi1).
        kappa (complex): Unimodular norming constant.
        source (str): 'pure-step', 'reflectionless' or 'profile'.
        printed_a11 (complex): Conventional closed-form a11 of the
            reflectionless case (2i/A), kept for reports.
        printed_a2dot0 (complex): Same, for a2'(0).
    """

    A: float
    a1: Callable
    a2: Callable
    b: Callable
    g: Callable
    case_tag: CaseTag = None
    xi1: float = None
    a11: complex = None
    a2dot0: complex = None
    a1dot_xi1: complex = None
    kappa: complex = 1.0 + 0j
    source: str = "profile"
    printed_a11: complex = None
    printed_a2dot0: complex = None

    def __post_init__(self):
        if abs(abs(complex(self.kappa)) - 1.0) > 1e-12:
            raise DomainError(f"norming constant must be unimodular, |kappa| = {abs(self.kappa)}")

    def r1(self, xi):
        return reflection_coefficients(self, xi)[0]

    def r2(self, xi):
        return reflection_coefficients(self, xi)[1]

    def b_mirror(self, xi):
        """conj(b(-conj xi)); the Schwarz reflection of b, analytic wherever b is."""
        return complex(self.b(-complex(xi).conjugate())).conjugate()

    def a2_at_zero(self):
        return complex(self.a2(0.0))


def reflection_coefficients(data, xi):
    """
    r1 = conj(b(-conj xi))/a1 and r2 = b/a2.

    Closed-form data continue both off the real axis; data computed from a
    profile are only available on it.

    Args:
        data (ScatteringData): Scattering data.
        xi (complex): Nonzero; real unless the data are closed-form.

    Returns:
        tuple: (r1, r2).
    """
    xi = complex(xi)
    if xi == 0:
        raise PoleError("reflection coefficients are not defined at xi = 0")
    if xi.imag == 0.0:
        xi = xi.real
    elif data.source == "profile":
        raise DomainError(f"reflection coefficients of profile data are real-axis only, got xi={xi}")
    a1, a2 = complex(data.a1(xi)), complex(data.a2(xi))
    if a1 == 0 or a2 == 0:
        raise PoleError(f"a1 or a2 vanishes at xi = {xi}")
    b = complex(data.b(xi))
    if b == 0:
        return 0j, 0j
    return data.b_mirror(xi) / a1, b / a2


def integration_spec(data, spec=DEFAULT_SPEC):
    """
    Tolerances for integrals of the data over infinite ranges.

    Profile data get the PROFILE_TAIL cutoff unless spec already sets one;
    closed-form data keep spec as it is.
    """
    if data.source != "profile" or spec.tail_cutoff is not None:
        return spec
    return replace(spec, tail_cutoff=PROFILE_TAIL)


def pure_step_data(A, kappa=1.0):
    """Closed-form data of the pure step (Case 1, xi1 = A/2)."""
    data = ScatteringData(
        A=A,
        a1=lambda xi: 1.0 + A * A / (4.0 * complex(xi) ** 2),
        a2=lambda xi: 1.0 + 0j,
        b=lambda xi: -A / (2j * complex(xi)),
        g=lambda xi: complex(xi) ** 2 + A * A / 4.0,
        kappa=complex(kappa),
        source="pure-step",
    )
    return complete(data)


def reflectionless_data(A, kappa=1.0):
    """Closed-form data with b = 0 (Case 2, xi1 = A/2)."""
    data = ScatteringData(
        A=A,
        a1=lambda xi: (complex(xi) - 0.5j * A) / complex(xi),
        a2=lambda xi: complex(xi) / (complex(xi) - 0.5j * A),
        b=lambda xi: 0j,
        g=lambda xi: complex(xi) * (complex(xi) - 0.5j * A),
        kappa=complex(kappa),
        source="reflectionless",
        printed_a11=2j / A,
        printed_a2dot0=A / 2j,
    )
    return complete(data)


def from_profile(profile, kappa=1.0, case="auto", spec=jost.JOST_SPEC):
    """
    Scattering data of a step-like profile from Jost Wronskians.

    Args:
        profile (InitialProfile): Initial datum.
        kappa (complex): Norming constant.
        case (str): 'auto', '1' or '2'.
        spec (QuadratureSpec): ODE tolerances.

    Returns:
        ScatteringData: Completed data.
    """

    @lru_cache(maxsize=4096)
    def a1(xi):
        return jost.wronskian_a1(profile, xi, spec)

    @lru_cache(maxsize=4096)
    def g(xi):
        return jost.wronskian_g(profile, xi, spec)

    @lru_cache(maxsize=4096)
    def a2(xi):
        return jost.wronskian_a2(profile, xi, spec)

    @lru_cache(maxsize=4096)
    def b_scaled(xi):
        return jost.wronskian_b_scaled(profile, xi, spec)

    def b(xi):
        xi = complex(xi)
        if xi == 0:
            raise PoleError("b is evaluated at xi = 0 only through its limit")
        return b_scaled(xi) / xi

    data = ScatteringData(A=profile.A, a1=lambda xi: a1(complex(xi)), a2=lambda xi: a2(complex(xi)),
                          b=b, g=lambda xi: g(complex(xi)), kappa=complex(kappa), source="profile")
    forced = {"1": CaseTag.CASE1, "2": CaseTag.CASE2}.get(str(case))
    return complete(data, forced_case=forced, spec=integration_spec(data))


def classify_case(data):
    """
    Case 1 if |a2(0)| exceeds the threshold, Case 2 otherwise.

    Args:
        data (ScatteringData): Scattering data with a2 evaluable at 0.

    Returns:
        CaseTag: The case.
    """
    a2_0 = data.a2_at_zero()
    threshold = CASE_THRESHOLD * (1.0 + data.A)
    if abs(a2_0) >= threshold:
        return CaseTag.CASE1
    a11, a2dot0 = case2_constants(data)
    if abs(a2dot0) < threshold and abs(a11) < threshold:
        raise UnsupportedDegeneracyError("a2(0) and a2'(0) both vanish")
    if abs(a2dot0) < threshold:
        raise UnsupportedDegeneracyError("a2 has a multiple zero at 0")
    return CaseTag.CASE2


def case2_constants(data, h=DERIVATIVE_STEP):
    """
    a11 = lim xi a1(xi) = g'(0) and a2'(0), by central differences.

    Returns:
        tuple: (a11, a2dot0).
    """
    a11 = (complex(data.g(h)) - complex(data.g(-h))) / (2.0 * h)
    a2dot0 = (complex(data.a2(h)) - complex(data.a2(-h))) / (2.0 * h)
    return a11, a2dot0


def _b_at_zero(data, h=DERIVATIVE_STEP):
    """b(0) in Case 2 from the symmetric average around 0."""
    try:
        return complex(data.b(0.0))
    except (PoleError, ZeroDivisionError):
        return 0.5 * (complex(data.b(h)) + complex(data.b(-h)))


def _log_pv(fn, spec):
    """(1/2 pi i) PV integral of fn(theta)/theta over the real line."""
    whole_line = ContourInterval(-math.inf, math.inf, decay_power=3.0)
    value = pv_integrate(lambda th: fn(th) / th, 0.0, whole_line, spec)
    return value / (2j * math.pi)


def _a1a2(data, th):
    """a1(th) a2(th) = g(th) a2(th) / th^2, stable near th = 0."""
    return complex(data.g(th)) * complex(data.a2(th)) / (th * th)


def locate_xi1(data, spec=DEFAULT_SPEC):
    """
    The zero i*xi1 of a1 from the case formulas.

    Case 1: xi1 = (A/2) exp(-(1/2 pi i) PV int ln(th^2/(th^2+1) a1 a2)/th).
    Case 2: xi1 = A (sqrt(Re b0^2 + F2^2) - Re b0) / (2 F1 F2) with
    F1 = exp((1/2 pi i) PV int ln(a1 a2)/th) and F2 = sqrt(1 - |b0|^2).

    Args:
        data (ScatteringData): Data with case_tag set.
        spec (QuadratureSpec): Tolerances.

    Returns:
        float: xi1 > 0.
    """
    A = data.A
    if data.case_tag is CaseTag.CASE1:
        exponent = _log_pv(
            lambda th: np.log(complex(data.g(th)) * complex(data.a2(th)) / (th * th + 1.0)), spec)
        xi1 = 0.5 * A * math.exp(-exponent.real)
        if abs(exponent.imag) > 1e-8 * (1.0 + abs(exponent.real)):
            logger.warning("[Scattering] Case 1 exponent has imaginary part %.3e", exponent.imag)
    else:
        b0 = _b_at_zero(data)
        if abs(b0) >= 1.0:
            raise DomainError(f"Case 2 formula needs |b(0)| < 1, got {abs(b0)}")
        F2 = math.exp(0.5 * math.log(1.0 - abs(b0) ** 2))
        F1 = math.exp(_log_pv(lambda th: np.log(_a1a2(data, th)), spec).real)
        xi1 = A * (math.sqrt(b0.real ** 2 + F2 ** 2) - b0.real) / (2.0 * F1 * F2)

    residual = abs(complex(data.g(1j * xi1))) / (xi1 * xi1)
    if residual > XI1_CHECK * max(1.0, A):
        raise InconsistentDataError(
            f"|a1(i xi1)| = {residual:.3e} at xi1 = {xi1:.10f}; formula and zero disagree")
    logger.info("[Scattering] xi1=%.10f (%s), |a1(i xi1)|=%.2e", xi1, data.case_tag.value, residual)
    return xi1


def a1_derivative(data, z, h=None):
    """a1'(z) by a central difference along the imaginary direction."""
    z = complex(z)
    if h is None:
        h = XI1_STEP * abs(z)
    upper = complex(data.g(z + 1j * h)) / (z + 1j * h) ** 2
    lower = complex(data.g(z - 1j * h)) / (z - 1j * h) ** 2
    return (upper - lower) / (2j * h)


def complete(data, forced_case=None, spec=DEFAULT_SPEC):
    """
    Fill case tag, Case 2 constants, xi1 and a1'(i xi1).

    Args:
        data (ScatteringData): Data with a1, a2, b, g set.
        forced_case (CaseTag, optional): Skip classification.
        spec (QuadratureSpec): Tolerances for the xi1 integrals.

    Returns:
        ScatteringData: A new, completed instance.
    """
    case = forced_case or classify_case(data)
    a11 = a2dot0 = None
    if case is CaseTag.CASE2:
        a11, a2dot0 = case2_constants(data)
    data = replace(data, case_tag=case, a11=a11, a2dot0=a2dot0)
    xi1 = locate_xi1(data, spec)
    a1dot = a1_derivative(data, 1j * xi1)
    if abs(a1dot) < CASE_THRESHOLD:
        raise NonSimpleZeroError(f"a1'(i xi1) = {a1dot} vanishes; the zero is not simple")
    logger.info("[Scattering] %s data: %s, a1'(i xi1)=%s", data.source, case.value, a1dot)
    return replace(data, xi1=xi1, a1dot_xi1=a1dot)
