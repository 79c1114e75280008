"""
Subcommands

Each subcommand reads a RunConfig and returns a CommandOutput: column
names, rows and extra metadata for the CSV writer, plus the exit code.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from asymptotics.soliton import q_soliton, soliton_field
from asymptotics.theorem import asymptotic_rows
from cli.validation import REPORT_COLUMNS, create_validation_suite
from modules.errors import SingularPointError
from scattering import data as scattering_data
from simulator.evolve import evolve
from simulator.grid import grid_from_function, smoothed_step
from simulator.residual import pde_residual
from steepest_descent.delta import build_delta, saddle_exponents
from steepest_descent.pc_model import LocalModelData, pc_coefficients, pc_model_matrix
from steepest_descent.phase import Regime, sign_of_re_phi, stationary_points

logger = logging.getLogger(__name__)

PROBE_HEIGHT = 0.25
LARGE_TAU = 50j
MODEL_R1 = 0.5


@dataclass
class CommandOutput:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)
    exit_code: int = 0


def _complex_pair(value):
    value = complex(value)
    return [value.real, value.imag]


def scattering_data_for(config, closed_form=True):
    """
    Scattering data of the configured profile.

    The pure step uses its closed form unless closed_form is False; other
    profiles go through the Jost solutions.
    """
    profile = config.build_profile()
    if closed_form and profile.is_pure_step:
        return scattering_data.pure_step_data(profile.A, config.kappa)
    return scattering_data.from_profile(profile, config.kappa, config.case)


def _data_metadata(data):
    return {"xi1": data.xi1, "case_tag": data.case_tag.value, "source": data.source,
            "a1dot_xi1": _complex_pair(data.a1dot_xi1)}


def run_scatter(config):
    """a1, a2, b, r1, r2 on the configured xi grid from the Jost solutions."""
    data = scattering_data_for(config, closed_form=False)
    rows = []
    for xi in config.command["xi"]:
        r1, r2 = scattering_data.reflection_coefficients(data, xi)
        rows.append([xi, complex(data.a1(xi)), complex(data.a2(xi)), complex(data.b(xi)), r1, r2])
    return CommandOutput(["xi", "a1", "a2", "b", "r1", "r2"], rows, _data_metadata(data))


def _sign_probes(lambdas):
    """Real probe abscissas between and beyond the stationary points."""
    points = sorted(lambdas)
    cuts = [points[0] - 1.0] + [0.5 * (a + b) for a, b in zip(points, points[1:])] + [points[-1] + 1.0]
    return cuts


def run_phase(config):
    """Stationary points, regime and sign samples of Re(i theta) per ray."""
    rows = []
    gamma = config.gamma
    for mu in config.command["mu"]:
        geometry = stationary_points(mu, gamma)
        if geometry.regime is Regime.THREE_REAL:
            labelled = list(geometry.saddles)
        else:
            labelled = list(geometry.lambdas) + [math.nan] * (3 - len(geometry.lambdas))
        for x in _sign_probes(geometry.lambdas):
            for height in (PROBE_HEIGHT, -PROBE_HEIGHT):
                probe = complex(x, height)
                rows.append([mu, geometry.regime.value, *labelled, probe, sign_of_re_phi(probe, geometry)])
    columns = ["mu", "regime", "lambda1", "lambda2", "lambda3", "probe", "sign"]
    return CommandOutput(columns, rows, {"gamma": gamma})


def run_delta(config):
    """delta on the real xi grid, with v and chi at the saddles in the metadata."""
    data = scattering_data_for(config)
    mu = config.command["mu"][0]
    geometry = stationary_points(mu, config.gamma)
    delta = build_delta(data, geometry, config.tolerances)
    exponents = saddle_exponents(data, geometry, config.tolerances, delta=delta)
    rows = []
    for xi in config.command["xi"]:
        if delta.on_contour(xi):
            plus, minus = delta.boundary_values(xi)
        else:
            plus = minus = delta(xi)
        rows.append([xi, plus, minus])
    metadata = {"mu": mu, "saddles": list(geometry.saddles),
                "v": [_complex_pair(v) for v in exponents.v],
                "chi": [_complex_pair(c) for c in exponents.chi],
                "delta0": _complex_pair(delta(0.0))}
    return CommandOutput(["xi", "delta_plus", "delta_minus"], rows, metadata)


def _unit_model(v):
    """Model data at a unit-curvature saddle with r1 = MODEL_R1 and 1 + r1 r2 = exp(-2 pi v)."""
    r2 = (np.exp(-2.0 * math.pi * v) - 1.0) / MODEL_R1
    beta, gamma, printed = pc_coefficients(1, MODEL_R1, r2, v)
    return LocalModelData(saddle=1, lam=0.0, v=v, chi=0j, r1r=MODEL_R1, r2r=complex(r2), beta=beta,
                          gamma=gamma, gamma_printed=printed, curvature=1.0, v_all=(v, v, v))


def run_pcmodel(config):
    """beta, gamma, real-axis jump residuals and the large-tau fit for each v."""
    rows = []
    for re_v, im_v in config.command["v"]:
        v = complex(re_v, im_v)
        model = _unit_model(v)
        fit = LARGE_TAU * (pc_model_matrix(1, model, LARGE_TAU) - np.eye(2))
        fit_error = max(abs(fit[0, 1] + 1j * model.beta) / abs(model.beta),
                        abs(fit[1, 0] - 1j * model.gamma) / abs(model.gamma))
        for tau in config.command["tau"]:
            above = pc_model_matrix(1, model, tau, side=1)
            below = pc_model_matrix(1, model, tau, side=-1)
            residual = float(np.max(np.abs(above - below)))
            rows.append([v, tau, model.beta, model.gamma, model.gamma_printed, residual, fit_error])
    columns = ["v", "tau", "beta", "gamma", "gamma_printed", "jump_residual", "large_tau_error"]
    return CommandOutput(columns, rows, {"r1": MODEL_R1, "large_tau": _complex_pair(LARGE_TAU)})


def run_asymptote(config):
    """q_asymptotic rows over the configured rays and times."""
    data = scattering_data_for(config)
    rows = asymptotic_rows(data, config.gamma, config.command["mus"], config.command["times"],
                           config.tolerances, config.phi_mode, config.power_base)
    columns = ["x", "t", "re_q", "im_q", "abs_q", "branch", "error_exponent"]
    return CommandOutput(columns, rows, _data_metadata(data))


def run_soliton(config):
    """Exact soliton on the x grid with its pointwise PDE residual."""
    A, gamma = config.A, config.gamma
    alpha, t = config.command["alpha"], config.command["t"]
    start, stop, count = config.command["x_range"]
    exact = soliton_field(A, alpha, gamma)
    rows = []
    skipped = 0
    for x in np.linspace(start, stop, count):
        x = float(x)
        try:
            q = q_soliton(x, t, A, alpha, gamma)
        except SingularPointError as exc:
            logger.warning("[Soliton] %s; point skipped", exc)
            skipped += 1
            continue
        rows.append([x, t, q, abs(pde_residual(exact, x, t, gamma))])
    return CommandOutput(["x", "t", "q", "residual"], rows, {"alpha": alpha, "skipped_poles": skipped})


def _initial_grid(config):
    profile = config.build_profile()
    half_width, h = config.command["half_width"], config.command["h"]
    if profile.kind == "soliton":
        return grid_from_function(profile.q0, half_width, h)
    return smoothed_step(profile, half_width, h)


def run_simulate(config):
    """Evolve the configured profile; snapshots in long format (t, x, q)."""
    grid = _initial_grid(config)
    snapshots = config.command["snapshots"]
    result = evolve(grid, config.command["t_end"], config.gamma, snapshots=snapshots or None)
    grids = result if snapshots else [result]
    rows = [row for snapshot in [grid] + list(grids) for row in snapshot.rows()]
    metadata = {"h": grid.h, "half_width": grid.half_width, "t_end": config.command["t_end"]}
    return CommandOutput(["t", "x", "q"], rows, metadata)


def run_validate(config):
    """Run the invariant suite; exit code 2 when any check fails."""
    suite = create_validation_suite(config.build_profile(), config.command["workers"], config.kappa)
    suite.run()
    failures = suite.failures()
    for failure in failures:
        print(f"[Validate] FAILED {failure.name}: measured {failure.measured:.3e} "
              f"> {failure.threshold:.1e} {failure.note}")
    return CommandOutput(REPORT_COLUMNS, suite.report_rows(), {"failures": len(failures)},
                         exit_code=2 if failures else 0)


COMMANDS = {
    "scatter": run_scatter,
    "phase": run_phase,
    "delta": run_delta,
    "pcmodel": run_pcmodel,
    "asymptote": run_asymptote,
    "soliton": run_soliton,
    "simulate": run_simulate,
    "validate": run_validate,
}
