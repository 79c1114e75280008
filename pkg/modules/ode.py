"""
Adaptive ODE stepping for matrix-valued linear systems.
"""

import logging

import numpy as np
from scipy.integrate import solve_ivp

from modules.errors import StiffnessError
from modules.quadrature import DEFAULT_SPEC

logger = logging.getLogger(__name__)


def ode_integrate(rhs, y0, span, spec=DEFAULT_SPEC, method="DOP853", samples_at=None):
    """
    Integrate Y' = rhs(s, Y) over a span and return Y at the end.

    Args:
        rhs (callable): rhs(s, Y) returning an array shaped like Y.
        y0 (array_like or complex): Initial value (matrix, vector or scalar).
        span (tuple): (s_start, s_end); s_end < s_start integrates backwards.
        spec (QuadratureSpec): abs_tol / rel_tol drive the local error control.
        method (str): solve_ivp method.
        samples_at (array_like, optional): Points inside the span (in
            integration order) where the solution is also wanted.

    Returns:
        ndarray or complex: Y(s_end); with samples_at, the pair
        (Y(s_end), list of Y at the sample points).
    """
    y0 = np.asarray(y0, dtype=complex)
    shape = y0.shape
    start, end = float(span[0]), float(span[1])

    def flat_rhs(s, y):
        return np.asarray(rhs(s, y.reshape(shape)), dtype=complex).ravel()

    def unflatten(column):
        return column.reshape(shape) if shape else complex(column[0])

    if start == end:
        final = unflatten(y0.ravel())
        return final if samples_at is None else (final, [final for _ in samples_at])

    t_eval = None
    if samples_at is not None:
        t_eval = np.append(np.asarray(samples_at, dtype=float), end)

    solution = solve_ivp(flat_rhs, (start, end), y0.ravel(), method=method,
                         rtol=spec.rel_tol, atol=spec.abs_tol, t_eval=t_eval)
    if solution.status < 0:
        raise StiffnessError(f"ODE integration failed on [{start}, {end}]: {solution.message}")
    logger.debug("[ODE] %s on [%g, %g]: %d rhs calls", method, start, end, solution.nfev)

    final = unflatten(solution.y[:, -1])
    if samples_at is None:
        return final
    return final, [unflatten(solution.y[:, k]) for k in range(solution.y.shape[1] - 1)]
