"""
Initial Profiles

Step-like initial data q0(x) = A*H(x) + p(x) where the perturbation p
vanishes outside [-support, support]. The nonlocal partner of q0 is
r0(x) = -conj(q0(-x)).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from modules.errors import SchemaError

logger = logging.getLogger(__name__)

PERTURBATION_KINDS = ("none", "gaussian-bump", "table", "soliton")
SOLITON_TAIL = 1e-13


def _zero(x):
    return 0j


@dataclass(frozen=True)
class InitialProfile:
    """
    Compact perturbation of the pure step.

    Args:
        A (float): Step height (A >= 0; A = 0 is the zero background).
        gamma (float): Quartic dispersion coefficient, > 0.
        perturbation (callable): p(x), identically zero for |x| > support.
        support (float): Half width of the perturbation support.
        kind (str): Perturbation kind used to build the profile.
        params (dict): Construction parameters, kept for metadata.
    """

    A: float
    gamma: float
    perturbation: Callable = _zero
    support: float = 0.0
    kind: str = "none"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.A >= 0:
            raise SchemaError(f"step height A must be non-negative, got {self.A}")
        if not self.gamma > 0:
            raise SchemaError(f"gamma must be positive, got {self.gamma}")
        if not self.support >= 0:
            raise SchemaError(f"support must be non-negative, got {self.support}")
        if self.kind not in PERTURBATION_KINDS:
            raise SchemaError(f"unknown perturbation kind '{self.kind}'")

    def p(self, x):
        if abs(x) > self.support:
            return 0j
        return complex(self.perturbation(x))

    def q0(self, x, side=0):
        """
        Initial datum at x.

        Args:
            x (float): Position.
            side (int): At x = 0 only, -1 / +1 select the left / right limit.

        Returns:
            complex: q0(x).
        """
        right = x > 0 or (x == 0 and side >= 0)
        return (self.A if right else 0.0) + self.p(x)

    def r0(self, x, side=0):
        """Nonlocal partner -conj(q0(-x)), with the same one-sided convention at 0."""
        return -complex(self.q0(-x, -side)).conjugate()

    @property
    def is_pure_step(self):
        return self.kind == "none"

    def metadata(self):
        return {"A": self.A, "gamma": self.gamma, "support": self.support,
                "perturbation": {"kind": self.kind, **self.params}}


def pure_step(A, gamma):
    """The unperturbed step q0 = A*H(x)."""
    return InitialProfile(A=A, gamma=gamma)


def gaussian_bump(A, gamma, amplitude, center=0.0, width=1.0, support=None):
    """
    Step plus a truncated Gaussian bump amplitude*exp(-((x-center)/width)^2).

    The bump is cut at |x| = support, by default where it falls below 1e-16.
    """
    amplitude = complex(amplitude)
    if support is None:
        reach = width * math.sqrt(max(math.log(max(abs(amplitude), 1e-300) / 1e-16), 0.0))
        support = abs(center) + reach
    if not width > 0:
        raise SchemaError("gaussian-bump width must be positive")

    def bump(x):
        return amplitude * math.exp(-((x - center) / width) ** 2)

    params = {"amplitude": [amplitude.real, amplitude.imag], "center": center, "width": width}
    return InitialProfile(A=A, gamma=gamma, perturbation=bump, support=support,
                          kind="gaussian-bump", params=params)


def tabulated(A, gamma, xs, values):
    """
    Step plus a linearly interpolated perturbation table.

    Args:
        xs (array_like): Ascending sample positions.
        values (array_like): Complex perturbation values at xs.
    """
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=complex)
    if xs.ndim != 1 or xs.size < 2 or xs.size != values.size:
        raise SchemaError("table perturbation needs matching xs/values with at least two samples")
    if np.any(np.diff(xs) <= 0):
        raise SchemaError("table xs must be strictly ascending")

    def interpolate(x):
        if x < xs[0] or x > xs[-1]:
            return 0j
        return complex(np.interp(x, xs, values.real), np.interp(x, xs, values.imag))

    support = float(max(abs(xs[0]), abs(xs[-1])))
    params = {"xs": xs.tolist(), "values": [[v.real, v.imag] for v in values]}
    return InitialProfile(A=A, gamma=gamma, perturbation=interpolate, support=support,
                          kind="table", params=params)


def soliton_profile(A, gamma, alpha):
    """
    The exact one-soliton at t = 0, written as a perturbation of the step.

    The support is where |q_soliton(x, 0) - A*H(x)| drops below 1e-13.
    """
    from asymptotics.soliton import q_soliton

    if not A > 0:
        raise SchemaError("soliton profile needs A > 0")
    support = math.log(A / SOLITON_TAIL) / A + 1.0

    def deviation(x):
        return q_soliton(x, 0.0, A, alpha, gamma) - (A if x > 0 else 0.0)

    return InitialProfile(A=A, gamma=gamma, perturbation=deviation, support=support,
                          kind="soliton", params={"alpha": alpha})


def profile_from_dict(spec):
    """
    Build a profile from its JSON document.

    Args:
        spec (dict): {"A", "gamma", "support"?, "perturbation": {"kind", ...}}.

    Returns:
        InitialProfile: The profile.
    """
    try:
        A = float(spec["A"])
        gamma = float(spec["gamma"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"profile needs numeric 'A' and 'gamma': {exc}") from exc

    perturbation = dict(spec.get("perturbation") or {"kind": "none"})
    kind = perturbation.pop("kind", "none")
    support = spec.get("support")

    if kind == "none":
        return pure_step(A, gamma)
    if kind == "gaussian-bump":
        amplitude = perturbation.get("amplitude", 0.1)
        if isinstance(amplitude, (list, tuple)):
            amplitude = complex(amplitude[0], amplitude[1])
        return gaussian_bump(A, gamma, amplitude,
                             center=float(perturbation.get("center", 0.0)),
                             width=float(perturbation.get("width", 1.0)),
                             support=float(support) if support else None)
    if kind == "table":
        values = [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
                  for v in perturbation.get("values", [])]
        return tabulated(A, gamma, perturbation.get("xs", []), values)
    if kind == "soliton":
        return soliton_profile(A, gamma, float(perturbation.get("alpha", math.pi)))
    raise SchemaError(f"unknown perturbation kind '{kind}'")
