"""
Long-Time Asymptotics

Leading-order q(x, t) along rays mu = x/t inside the three-saddle band.
For x > 0 each saddle contributes an L-term, an N-term or both, depending
on the interval of Im v(lambda_s), on top of the background
A delta(0)^2. For x < 0 the H-terms are built from the conjugated data of
the ray -mu and there is no background.

Every term is amplitude * t**exponent with a complex exponent; the
oscillatory t^{+-i Re v} factors are part of the exponent.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from modules.errors import DomainError, RegimeError, TableGapError
from modules.quadrature import DEFAULT_SPEC
from modules.special_functions import reciprocal_gamma
from scattering.data import reflection_coefficients
from steepest_descent.delta import build_delta, saddle_exponents
from steepest_descent.pc_model import PhiMode, local_phase_phi
from steepest_descent.phase import critical_slope, stationary_points

logger = logging.getLogger(__name__)

SQRT_2PI = math.sqrt(2.0 * math.pi)
SIXTH = 1.0 / 6.0
RAY_MATCH = 1e-9
POWER_BASES = ("theorem", "derivation")


def im_v_interval(im_v):
    """1, 2 or 3 for Im v in (-1/2, -1/6], (-1/6, 1/6) or [1/6, 1/2)."""
    if not -0.5 < im_v < 0.5:
        raise DomainError(f"Im v = {im_v} is outside (-1/2, 1/2)")
    if im_v <= -SIXTH:
        return 1
    if im_v >= SIXTH:
        return 3
    return 2


@dataclass(frozen=True)
class ErrorOrder:
    """
    O(t^exponent), times ln t when log is set.

    Args:
        exponent (float): Power of t.
        log (bool): Extra ln t factor.
        table (str): 'R1' or 'R2'.
        row (int): Matching case row, 1-based.
    """

    exponent: float
    log: bool
    table: str
    row: int

    def describe(self):
        power = f"t^{self.exponent:.6g}"
        return f"O({power} ln t)" if self.log else f"O({power})"

    def worse(self, other):
        if other is None:
            return self
        if abs(self.exponent - other.exponent) > 1e-15:
            return self if self.exponent > other.exponent else other
        return self if self.log else other


def _r1_rows(a, b, c):
    """Case rows of the first table for Im v = (a, b, c)."""
    A, B, C = abs(a), abs(b), abs(c)
    zero_ok = ((a == 0 and b <= 0 and c >= 0) or (b == 0 and a >= 0 and c >= 0)
               or (c == 0 and a >= 0 and b <= 0))
    return [
        (a < 0 and b > 0 and c < 0, -1.0, False),
        (zero_ok, -1.0, True),
        (a > 0 and b >= 0 and c <= 0, -1.0 + 2 * A, False),
        (a <= 0 and b < 0 and c <= 0, -1.0 + 2 * B, False),
        (a <= 0 and b >= 0 and c > 0, -1.0 + 2 * C, False),
        (a > 0 and b < 0 and c <= 0, -1.0 + 2 * max(A, B), False),
        (a <= 0 and b < 0 and c > 0, -1.0 + 2 * max(B, C), False),
        (a > 0 and b >= 0 and c > 0, -1.0 + 2 * max(A, C), False),
        (a > 0 and b < 0 and c > 0, -1.0 + 2 * max(A, B, C), False),
    ]


def _r2_rows(a, b, c):
    """Case rows of the second table for Im v = (a, b, c)."""
    A, B, C = abs(a), abs(b), abs(c)
    zero_ok = ((a == 0 and b >= 0 and c <= 0) or (b == 0 and a <= 0 and c <= 0)
               or (c == 0 and a <= 0 and b >= 0))
    return [
        (a < 0 and b > 0 and c < 0, -1.0 + 2 * max(A, B, C), False),
        (a < 0 and b > 0 and c >= 0, -1.0 + 2 * max(A, B), False),
        (a >= 0 and b > 0 and c < 0, -1.0 + 2 * max(B, C), False),
        (a < 0 and b <= 0 and c < 0, -1.0 + 2 * max(A, C), False),
        (a < 0 and b <= 0 and c >= 0, -1.0 + 2 * A, False),
        (a >= 0 and b > 0 and c >= 0, -1.0 + 2 * B, False),
        (a >= 0 and b <= 0 and c < 0, -1.0 + 2 * C, False),
        (zero_ok, -1.0, True),
        (a > 0 and b < 0 and c > 0, -1.0, False),
    ]


_TABLES = {"R1": _r1_rows, "R2": _r2_rows}


def table_order(table, v):
    """
    First matching row of an error table.

    Args:
        table (str): 'R1' or 'R2'.
        v (tuple): v(lambda1), v(lambda2), v(lambda3).

    Returns:
        ErrorOrder: The order of that row.
    """
    im = tuple(complex(value).imag for value in v)
    for row, (matches, exponent, log) in enumerate(_TABLES[table](*im), start=1):
        if matches:
            return ErrorOrder(exponent=exponent, log=log, table=table, row=row)
    pattern = tuple(int(np.sign((-1) ** j * value)) for j, value in enumerate(im, start=1))
    raise TableGapError(f"{table} has no row for (-1)^j Im v_j signs {pattern}", pattern=pattern)


def error_order(v1, v2, v3):
    """(R1, R2) error orders for the given v(lambda_j); TableGapError if either table has no row."""
    v = (v1, v2, v3)
    for value in v:
        if abs(complex(value).imag) >= 0.5:
            raise DomainError(f"|Im v| = {abs(complex(value).imag)} is not below 1/2")
    return table_order("R1", v), table_order("R2", v)


def _try_order(table, v):
    try:
        return table_order(table, v)
    except TableGapError as exc:
        logger.warning("[Asymptotics] %s", exc)
        return None


@dataclass(frozen=True)
class AsymptoticInputs:
    """
    Everything the leading-order formulas read on one ray |mu|.

    Args:
        geometry (PhaseGeometry): Saddles of the ray |mu| (mu > 0).
        A (float): Step height.
        v (tuple): v(lambda_s).
        chi (tuple): chi_s(lambda_s).
        r1 (tuple): r1(lambda_s).
        r2 (tuple): r2(lambda_s).
        delta0 (complex): delta(0) on the ray.
        phi_mode (PhiMode): Remainder phase convention.
        power_base (str): 'theorem' (4(...) bases) or 'derivation' (4t(...) bases).
    """

    geometry: object
    A: float
    v: tuple
    chi: tuple
    r1: tuple
    r2: tuple
    delta0: complex
    phi_mode: PhiMode = PhiMode.CONSISTENT
    power_base: str = "theorem"

    def __post_init__(self):
        if self.power_base not in POWER_BASES:
            raise DomainError(f"power_base must be one of {POWER_BASES}, got '{self.power_base}'")
        if not self.geometry.in_first_domain:
            raise RegimeError("asymptotic inputs are built on a ray with mu > 0 and three saddles")

    @property
    def mu(self):
        return self.geometry.mu

    @property
    def background(self):
        return rough_background(self.A, self.delta0)

    @property
    def c0(self):
        return self.background / 2j


def rough_background(A, delta0):
    """A delta(0)^2."""
    return A * delta0 * delta0


def asymptotic_inputs(data, mu, gamma, spec=DEFAULT_SPEC, phi_mode=PhiMode.CONSISTENT,
                      power_base="theorem"):
    """
    Build AsymptoticInputs for the ray |mu| from scattering data.

    Args:
        data (ScatteringData): Completed scattering data.
        mu (float): Ray slope x/t; its sign only picks the half-line later.
        gamma (float): Quartic dispersion coefficient.
        spec (QuadratureSpec): Tolerances of the delta integrals.
        phi_mode (PhiMode): Remainder phase convention.
        power_base (str): 'theorem' or 'derivation'.

    Returns:
        AsymptoticInputs: The bundle.
    """
    geometry = stationary_points(abs(mu), gamma)
    delta = build_delta(data, geometry, spec)
    exponents = saddle_exponents(data, geometry, spec, delta=delta)
    r1, r2 = zip(*(reflection_coefficients(data, lam) for lam in geometry.saddles))
    return AsymptoticInputs(geometry=geometry, A=data.A, v=exponents.v, chi=exponents.chi,
                            r1=tuple(r1), r2=tuple(r2), delta0=delta(0.0),
                            phi_mode=PhiMode(phi_mode), power_base=power_base)


def _ipow(base, exponent):
    """base**exponent for a real positive base."""
    return cmath.exp(exponent * math.log(base))


def _coefficient(prefactor, rgamma, r):
    """prefactor * (1/Gamma) / r; 0 when 1/Gamma vanishes."""
    if rgamma == 0 or r == 0:
        return 0j
    return prefactor * rgamma / r


def coefficients_hln(inputs, t_scale=1.0):
    """
    H_s, L_s and N_s on the ray of `inputs`.

    t_scale multiplies the 4 in every power base (1 for the theorem
    convention, t for the derivation one).

    Returns:
        dict: {'H': (H1, H2, H3), 'L': (...), 'N': (...)}.
    """
    geometry = inputs.geometry
    c1, c2, c3 = (geometry.curvature(s) for s in (1, 2, 3))
    lam1, lam2, lam3 = geometry.saddles
    v1, v2, v3 = (complex(v) for v in inputs.v)
    r1, r2 = inputs.r1, inputs.r2
    c0sq = inputs.c0 ** 2
    four = 4.0 * t_scale
    F = c2 / (four * c1 * c3)
    G = 1.0 / (four * c3)
    ratio = c2 / c1
    e_plus, e_minus = cmath.exp(0.25j * math.pi), cmath.exp(-0.25j * math.pi)

    def outer(v, phase, curvature):
        return SQRT_2PI * cmath.exp(-0.5 * math.pi * v) * phase / math.sqrt(curvature)

    L = (
        _coefficient(outer(v1, e_plus, c1) * _ipow(F, 1j * v1), reciprocal_gamma(-1j * v1), r1[0]),
        _coefficient(outer(v2.conjugate(), e_minus, c2) * _ipow(G, -1j * v3) * _ipow(ratio, -1j * v2),
                     reciprocal_gamma(1j * v2.conjugate()), complex(r1[1]).conjugate()),
        _coefficient(outer(v3, e_plus, c3) * _ipow(F, 1j * v3), reciprocal_gamma(-1j * v3), r1[2]),
    )
    N = (
        _coefficient(c0sq * outer(v1, e_minus, c1) * _ipow(F, -1j * v1) / lam1 ** 2,
                     reciprocal_gamma(1j * v1), r2[0]),
        _coefficient(c0sq * outer(v2.conjugate(), e_plus, c2) * _ipow(G, -1j * v1) * _ipow(ratio, 1j * v2)
                     / lam2 ** 2, reciprocal_gamma(-1j * v2.conjugate()), complex(r2[1]).conjugate()),
        _coefficient(c0sq * outer(v3, e_minus, c3) * _ipow(F, -1j * v3) / lam3 ** 2,
                     reciprocal_gamma(1j * v3), r2[2]),
    )
    w1, w2, w3 = v1.conjugate(), v2.conjugate(), v3.conjugate()
    H = (
        _coefficient(outer(w1, e_plus, c1) * _ipow(F, 1j * w1), reciprocal_gamma(-1j * w1),
                     complex(r2[0]).conjugate()),
        _coefficient(outer(v2, e_minus, c2) * _ipow(G, -1j * w3) * _ipow(ratio, -1j * w2),
                     reciprocal_gamma(1j * v2), r2[1]),
        _coefficient(outer(w3, e_plus, c3) * _ipow(F, 1j * w3), reciprocal_gamma(-1j * w3),
                     complex(r2[2]).conjugate()),
    )
    return {"H": H, "L": L, "N": N}


@dataclass(frozen=True)
class LeadingTerm:
    """amplitude * t**exponent contributed by one saddle."""

    saddle: int
    kind: str
    amplitude: complex
    exponent: complex

    def value(self, t):
        return self.amplitude * cmath.exp(self.exponent * math.log(t))


@dataclass(frozen=True)
class AsymptoticResult:
    """
    Leading-order asymptotics at one point (x, t).

    Args:
        x (float): Position.
        t (float): Time.
        branch (str): 'XNeg', 'XPosI1', 'XPosI2', 'XPosI3' or 'XPosMixed'.
        leading_terms (tuple): LeadingTerm per included saddle term.
        background (complex): A delta(0)^2 for x > 0, 0 for x < 0.
        error_order (ErrorOrder): Predicted remainder, None on a table gap.
        inputs (AsymptoticInputs): Ray data, reused by value_at.
    """

    x: float
    t: float
    branch: str
    leading_terms: tuple
    background: complex
    error_order: ErrorOrder = None
    inputs: AsymptoticInputs = field(default=None, repr=False, compare=False)

    @property
    def value(self):
        return self.background + sum((term.value(self.t) for term in self.leading_terms), 0j)

    @property
    def oscillatory_part(self):
        return self.value - self.background

    def value_at(self, x, t):
        """q at another point of the same ray."""
        return q_asymptotic(x, t, self.inputs).value

    def as_row(self):
        q = self.value
        order = self.error_order.exponent if self.error_order else float("nan")
        return [self.x, self.t, q.real, q.imag, abs(q), self.branch, order]


def _check_ray(x, t, inputs):
    if not t > 0:
        raise DomainError(f"asymptotics need t > 0, got {t}")
    if x == 0:
        raise RegimeError("x = 0 is not on an admissible ray")
    mu = x / t
    if abs(abs(mu) - inputs.mu) > RAY_MATCH * max(1.0, inputs.mu):
        raise DomainError(f"x/t = {mu} is not on the ray |mu| = {inputs.mu} of these inputs")
    if abs(mu) >= critical_slope(inputs.geometry.gamma):
        raise RegimeError(f"|mu| = {abs(mu)} is outside the three-saddle band")
    return mu


def _exponent_factor(inputs, s, t):
    """chi_s + phi_s at the saddle (tau = 0)."""
    phi = local_phase_phi(s, inputs.geometry, t, 0.0, inputs.phi_mode)
    return inputs.chi[s - 1] + phi


def q_asymptotic(x, t, inputs):
    """
    Leading-order q(x, t) on the ray of `inputs`.

    x > 0: saddle s carries its N-term when Im v(lambda_s) is in I1 or I2
    and its L-term when it is in I2 or I3;
        L-term: -t^{-1/2 + (-1)^s i v} e^{2(chi + phi)} L_s,
        N-term: +t^{-1/2 - (-1)^s i v} e^{-2(chi + phi)} N_s,
    plus the background A delta(0)^2.
    x < 0: -t^{-1/2 + (-1)^s i conj(v)} e^{-2 conj(chi + phi)} H_s.

    With power_base='derivation' the t-powers sit in the 4t(...) bases of
    the coefficients and only t^{-1/2} is left outside.

    Args:
        x (float): Position, nonzero.
        t (float): Time, > 0.
        inputs (AsymptoticInputs): Data of the ray |x/t|.

    Returns:
        AsymptoticResult: Terms, background and error order.
    """
    _check_ray(x, t, inputs)
    derivation = inputs.power_base == "derivation"
    coefficients = coefficients_hln(inputs, t_scale=t if derivation else 1.0)
    v = tuple(complex(value) for value in inputs.v)
    intervals = [im_v_interval(value.imag) for value in v]
    terms = []

    if x < 0:
        for s in (1, 2, 3):
            sign = (-1) ** s
            eta = _exponent_factor(inputs, s, t).conjugate()
            exponent = -0.5 if derivation else -0.5 + sign * 1j * v[s - 1].conjugate()
            terms.append(LeadingTerm(s, "H", -cmath.exp(-2.0 * eta) * coefficients["H"][s - 1], exponent))
        order = _try_order("R1", v)
        result = AsymptoticResult(x=x, t=t, branch="XNeg", leading_terms=tuple(terms),
                                  background=0j, error_order=order, inputs=inputs)
        logger.debug("[Asymptotics] x=%.6g t=%.6g XNeg q=%s", x, t, result.value)
        return result

    for s in (1, 2, 3):
        sign = (-1) ** s
        eta = _exponent_factor(inputs, s, t)
        interval = intervals[s - 1]
        if interval in (2, 3):
            exponent = -0.5 if derivation else -0.5 + sign * 1j * v[s - 1]
            terms.append(LeadingTerm(s, "L", -cmath.exp(2.0 * eta) * coefficients["L"][s - 1], exponent))
        if interval in (1, 2):
            exponent = -0.5 if derivation else -0.5 - sign * 1j * v[s - 1]
            terms.append(LeadingTerm(s, "N", cmath.exp(-2.0 * eta) * coefficients["N"][s - 1], exponent))

    if len(set(intervals)) == 1:
        branch = f"XPosI{intervals[0]}"
    else:
        branch = "XPosMixed"
    if branch == "XPosI1":
        order = _try_order("R1", v)
    elif branch == "XPosI3":
        order = _try_order("R2", v)
    else:
        first, second = _try_order("R1", v), _try_order("R2", v)
        order = first.worse(second) if first else second
    result = AsymptoticResult(x=x, t=t, branch=branch, leading_terms=tuple(terms),
                              background=inputs.background, error_order=order, inputs=inputs)
    logger.debug("[Asymptotics] x=%.6g t=%.6g %s q=%s", x, t, branch, result.value)
    return result


def q_rough(x, t, data, delta):
    """
    Rough estimate: A delta(0)^2 for x > 0 and 0 for x < 0.

    Args:
        x (float): Position.
        t (float): Time (only the ray matters).
        data (ScatteringData): Scattering data.
        delta (DeltaFunction): Delta on the ray |x/t|.

    Returns:
        complex: The estimate.
    """
    if x < 0:
        return 0j
    return rough_background(data.A, delta(0.0))


def asymptotic_rows(data, gamma, mus, times, spec=DEFAULT_SPEC, phi_mode=PhiMode.CONSISTENT,
                    power_base="theorem"):
    """
    Rows (x, t, Re q, Im q, |q|, branch, error exponent) over rays and times.

    The ray data are built once per |mu|.
    """
    rows = []
    cache = {}
    for mu in mus:
        key = abs(mu)
        if key not in cache:
            cache[key] = asymptotic_inputs(data, key, gamma, spec, phi_mode, power_base)
        for t in times:
            rows.append(q_asymptotic(mu * t, t, cache[key]).as_row())
    logger.info("[Asymptotics] %d rows over %d rays", len(rows), len(cache))
    return rows
