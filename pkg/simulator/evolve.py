"""
Short-Time Evolution

Method of lines for the focusing nonlocal equation on a symmetric grid.
Space derivatives use sixth-order central stencils; the two end points
are clamped to the far-field values and the stencils read constant
extensions beyond them. Time stepping is IMEX: the linear dispersion
-(i/2) q_xx - i gamma q_xxxx is treated by Crank-Nicolson through a sparse
LU factorization, the nonlinear remainder by Heun's method. The step size
is controlled by step doubling.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from modules.errors import BlowUpError, DomainError, StabilityError
from modules.ode import ode_integrate
from modules.quadrature import QuadratureSpec
from simulator.residual import central_weights

logger = logging.getLogger(__name__)

STENCIL_ORDER = 6
PAD = 4
SAFETY = 0.5
MIN_STEP = 1e-12
GROW_AFTER = 4
LU_CACHE = 8
FAR_FIELD_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12)


def far_field_phase_rate(A, gamma, partner="nonlocal", horizon=1.0, samples=64):
    """
    Phase rate of the spatially constant reduction q' = i q^2 p - 6i gamma p^2 q^3.

    The nonlocal partner p = -conj(q(-x)) of the right far field is the
    left far field, 0; the local choice p = -conj(q) is kept for comparison.

    Args:
        A (float): Far-field modulus.
        gamma (float): Quartic dispersion coefficient.
        partner (str): 'nonlocal' or 'local'.
        horizon (float): Integration time.
        samples (int): Phase samples used for unwrapping.

    Returns:
        float: d arg(q)/dt.
    """
    if partner not in ("nonlocal", "local"):
        raise DomainError(f"partner must be 'nonlocal' or 'local', got '{partner}'")

    def rhs(_, q):
        p = 0.0 if partner == "nonlocal" else -np.conj(q)
        return 1j * q * q * p - 6j * gamma * p * p * q ** 3

    times = np.linspace(0.0, horizon, samples + 1)[1:-1]
    final, values = ode_integrate(rhs, complex(A), (0.0, horizon), FAR_FIELD_SPEC, samples_at=times)
    phases = np.unwrap(np.angle([complex(A)] + list(values) + [final]))
    rate = float((phases[-1] - phases[0]) / horizon)
    logger.info("[Simulator] far-field phase rate (%s partner) = %.6g", partner, rate)
    return rate


def _float_weights(derivative):
    return np.array([float(w) for w in central_weights(derivative, STENCIL_ORDER)])


@dataclass(frozen=True)
class EvolveSettings:
    """
    Step control.

    Args:
        abs_tol (float): Absolute local error tolerance.
        rel_tol (float): Relative local error tolerance.
        max_steps (int): Accepted plus rejected steps before giving up.
    """

    abs_tol: float = 1e-8
    rel_tol: float = 1e-6
    max_steps: int = 2_000_000


class _Operators:
    """Stencils, the sparse linear operator and the nonlinear remainder on one grid."""

    def __init__(self, grid, gamma):
        self.h = grid.h
        self.gamma = gamma
        self.n = grid.n_intervals - 1
        self.w1 = _float_weights(1)
        self.w2 = _float_weights(2)
        self.w4 = _float_weights(4)
        d2 = self._matrix(self.w2) / self.h ** 2
        d4 = self._matrix(self.w4) / self.h ** 4
        self.linear = (-0.5j * d2 - 1j * gamma * d4).tocsc()
        unit_right = np.zeros(self.n + 2, dtype=complex)
        unit_right[-1] = 1.0
        unit_left = unit_right[::-1].copy()
        self.forcing_right = self._linear_on_padded(unit_right)
        self.forcing_left = self._linear_on_padded(unit_left)
        self._lu = {}

    def _matrix(self, weights):
        half = (len(weights) - 1) // 2
        offsets = list(range(-half, half + 1))
        diagonals = [np.full(self.n - abs(k), w) for k, w in zip(offsets, weights)]
        return sparse.diags(diagonals, offsets, shape=(self.n, self.n), dtype=complex)

    def _pad(self, full):
        return np.pad(full, PAD, mode="edge")

    def _apply(self, weights, padded, derivative):
        half = (len(weights) - 1) // 2
        out = np.zeros(self.n, dtype=complex)
        for k, w in zip(range(-half, half + 1), weights):
            start = PAD + 1 + k
            out += w * padded[start:start + self.n]
        return out / self.h ** derivative

    def _linear_on_padded(self, boundary_full):
        """Contribution of the clamped end values to the linear operator."""
        padded = self._pad(boundary_full)
        return (-0.5j * self._apply(self.w2, padded, 2)
                - 1j * self.gamma * self._apply(self.w4, padded, 4))

    def forcing(self, left, right):
        return left * self.forcing_left + right * self.forcing_right

    def nonlinear(self, interior, left, right):
        full = np.concatenate(([left], interior, [right]))
        partner = -np.conj(full[::-1])
        q_pad, r_pad = self._pad(full), self._pad(partner)
        q, r = full[1:-1], partner[1:-1]
        q_x = self._apply(self.w1, q_pad, 1)
        r_x = self._apply(self.w1, r_pad, 1)
        q_xx = self._apply(self.w2, q_pad, 2)
        r_xx = self._apply(self.w2, r_pad, 2)
        rest = (6j * r * q_x ** 2 + 4j * q * q_x * r_x + 8j * r * q * q_xx
                + 2j * q * q * r_xx - 6j * r * r * q ** 3)
        return 1j * q * q * r + self.gamma * rest

    def factor(self, dt):
        lu = self._lu.get(dt)
        if lu is None:
            if len(self._lu) >= LU_CACHE:
                self._lu.clear()
            identity = sparse.identity(self.n, dtype=complex, format="csc")
            lu = splu((identity - 0.5 * dt * self.linear).tocsc())
            self._lu[dt] = lu
        return lu

    def explicit_bound(self, values, far_right):
        """
        Step bound for the explicitly treated second-derivative terms.

        A mode k sees the explicit rate c k^2 divided by the Crank-Nicolson
        factor of gamma k^4, so the worst mode gives dt <= gamma Y^2 / (2 c^2)
        with Y = SAFETY and c = 10 gamma max|q|^2.
        """
        amplitude = max(float(np.max(np.abs(values))), abs(far_right))
        coefficient = 10.0 * self.gamma * amplitude ** 2
        if coefficient == 0:
            return math.inf
        return self.gamma * SAFETY ** 2 / (2.0 * coefficient ** 2)


def stability_limit(grid, gamma):
    """Step bound of the explicit part on this grid."""
    return _Operators(grid, gamma).explicit_bound(grid.values, grid.values[-1])


def _imex_step(ops, q, t, dt, boundary):
    lu = ops.factor(dt)
    left0, right0 = boundary(t)
    left1, right1 = boundary(t + dt)
    base = q + 0.5 * dt * (ops.linear @ q) + 0.5 * dt * (ops.forcing(left0, right0) + ops.forcing(left1, right1))
    n0 = ops.nonlinear(q, left0, right0)
    predictor = lu.solve(base + dt * n0)
    n1 = ops.nonlinear(predictor, left1, right1)
    return lu.solve(base + 0.5 * dt * (n0 + n1))


def evolve(grid, t_end, gamma, dt=None, snapshots=None, settings=EvolveSettings(), far_field_rate=None):
    """
    Integrate the grid from grid.time to t_end (backwards if t_end < grid.time).

    Args:
        grid (FieldGrid): Initial samples; end values are the far fields.
        t_end (float): Final time.
        gamma (float): Quartic dispersion coefficient.
        dt (float, optional): Initial step size; defaults to the stability bound.
        snapshots (list, optional): Intermediate times to return, in order.
        settings (EvolveSettings): Error control.
        far_field_rate (float, optional): Right clamp phase rate; computed
            with far_field_phase_rate when omitted.

    Returns:
        FieldGrid, or the list of snapshot grids followed by the final grid
        when snapshots are requested.
    """
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    ops = _Operators(grid, gamma)
    t0 = grid.time
    left, right = complex(grid.values[0]), complex(grid.values[-1])
    if far_field_rate is None:
        far_field_rate = far_field_phase_rate(abs(right), gamma) if right != 0 else 0.0

    def boundary(t):
        return left, right * np.exp(1j * far_field_rate * (t - t0))

    bound = ops.explicit_bound(grid.values, right)
    if dt is not None and abs(dt) > bound:
        raise StabilityError(f"dt={dt:.3e} exceeds the explicit stability bound {bound:.3e}")
    direction = 1.0 if t_end >= t0 else -1.0
    step = min(abs(dt) if dt else bound, abs(t_end - t0) or bound)

    targets = [float(s) for s in (snapshots or [])] + [float(t_end)]
    for earlier, later in zip(targets, targets[1:]):
        if direction * (later - earlier) < 0:
            raise DomainError("snapshot times must run from the start time towards t_end")

    q = grid.values[1:-1].astype(complex)
    t = t0
    outputs = []
    accepted = rejected = calm = 0
    for target in targets:
        while direction * (target - t) > 1e-14 * max(1.0, abs(target)):
            if accepted + rejected >= settings.max_steps:
                raise StabilityError(f"no convergence after {settings.max_steps} steps at t={t}")
            trial = min(step, abs(target - t))
            signed = direction * trial
            full = _imex_step(ops, q, t, signed, boundary)
            half = _imex_step(ops, q, t, 0.5 * signed, boundary)
            half = _imex_step(ops, half, t + 0.5 * signed, 0.5 * signed, boundary)
            if not (np.all(np.isfinite(full)) and np.all(np.isfinite(half))):
                raise BlowUpError(f"non-finite field at t={t + signed:.6g}")
            scale = settings.abs_tol + settings.rel_tol * float(np.max(np.abs(half)))
            error = float(np.max(np.abs(half - full))) / scale
            if error <= 1.0:
                q, t = half, t + signed
                accepted += 1
                calm = calm + 1 if error < 1.0 / 16.0 else 0
                if calm >= GROW_AFTER and trial == step:
                    step = min(2.0 * step, bound)
                    calm = 0
            else:
                rejected += 1
                step *= 0.5
                calm = 0
                logger.debug("[Simulator] step rejected dt=%.3e error=%.3g", trial, error)
                if step < MIN_STEP:
                    raise StabilityError(f"step size collapsed below {MIN_STEP} at t={t:.6g}")
        l_value, r_value = boundary(t)
        outputs.append(grid.with_values(np.concatenate(([l_value], q, [r_value])), target))

    logger.info("[Simulator] t=%.6g reached: %d accepted, %d rejected steps", t, accepted, rejected)
    return outputs if snapshots else outputs[-1]
