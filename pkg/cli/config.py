"""
Run Configuration

RunConfig is built from a JSON document (optionally overridden by
command-line flags) and validated before any computation starts. All
defaults live in DEFAULTS.
"""

import copy
import json
import logging
import math
from dataclasses import dataclass, field

from modules.errors import SchemaError
from modules.quadrature import QuadratureSpec
from scattering.profile import PERTURBATION_KINDS, profile_from_dict

logger = logging.getLogger(__name__)

PHI_MODES = ("consistent", "literal")
CASES = ("auto", "1", "2")
POWER_BASES = ("theorem", "derivation")

DEFAULTS = {
    "profile": {"A": 2.0, "gamma": 1.0 / 27.0, "perturbation": {"kind": "none"}},
    "command": {
        "xi": [-5.0, -2.0, -1.0, -0.5, -0.25, 0.25, 0.5, 1.0, 2.0, 5.0],
        "mu": [0.5],
        "mus": [0.5, -0.5],
        "times": [100.0, 1000.0, 10000.0],
        "tau": [0.5, -0.5, 2.0, -2.0],
        "v": [[0.11, 0.0], [0.11, 0.2]],
        "alpha": 0.0,
        "x_range": [-10.0, 10.0, 201],
        "t": 0.0,
        "half_width": 10.0,
        "h": 0.05,
        "t_end": 0.1,
        "snapshots": [],
        "workers": 4,
    },
    "output": {"path": "out.csv"},
    "tolerances": {"abs": 1e-10, "rel": 1e-9, "depth": 30},
    "phi_mode": "consistent",
    "power_base": "theorem",
    "case": "auto",
    "kappa": [1.0, 0.0],
}

_TOP_KEYS = set(DEFAULTS)
_PROFILE_KEYS = {"A", "gamma", "support", "perturbation"}
_TOLERANCE_KEYS = {"abs", "rel", "depth"}


def _merge(base, update):
    """Recursive dict merge; update wins."""
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict) and key != "perturbation":
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _number(value, name, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"'{name}' must be a number, got {value!r}")
    if not math.isfinite(value):
        raise SchemaError(f"'{name}' must be finite, got {value!r}")
    if positive and not value > 0:
        raise SchemaError(f"'{name}' must be positive, got {value!r}")
    return float(value)


def _number_list(values, name):
    if not isinstance(values, list):
        raise SchemaError(f"'{name}' must be a list, got {values!r}")
    return [_number(v, name) for v in values]


@dataclass(frozen=True)
class RunConfig:
    """
    Validated run description.

    Args:
        profile (dict): Profile document (scattering.profile format).
        command (dict): Subcommand parameters.
        output_path (str): CSV destination.
        tolerances (QuadratureSpec): Quadrature and ODE tolerances.
        phi_mode (str): 'consistent' or 'literal'.
        power_base (str): 'theorem' or 'derivation'.
        case (str): 'auto', '1' or '2'.
        kappa (complex): Unimodular norming constant.
    """

    profile: dict
    command: dict
    output_path: str
    tolerances: QuadratureSpec
    phi_mode: str = "consistent"
    power_base: str = "theorem"
    case: str = "auto"
    kappa: complex = 1.0 + 0j
    document: dict = field(default_factory=dict, compare=False, repr=False)

    def build_profile(self):
        return profile_from_dict(self.profile)

    @property
    def A(self):
        return float(self.profile["A"])

    @property
    def gamma(self):
        return float(self.profile["gamma"])

    def metadata(self):
        return {"profile": self.profile, "phi_mode": self.phi_mode, "power_base": self.power_base,
                "case": self.case, "kappa": [self.kappa.real, self.kappa.imag],
                "tolerances": self.document.get("tolerances")}


def validate_document(document):
    """
    Check a merged configuration document.

    Raises:
        SchemaError: Unknown keys, wrong types or out-of-range values.
    """
    if not isinstance(document, dict):
        raise SchemaError("configuration must be a JSON object")
    unknown = set(document) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown configuration keys: {sorted(unknown)}")

    profile = document["profile"]
    if not isinstance(profile, dict):
        raise SchemaError("'profile' must be an object")
    unknown = set(profile) - _PROFILE_KEYS
    if unknown:
        raise SchemaError(f"unknown profile keys: {sorted(unknown)}")
    _number(profile.get("A"), "profile.A", positive=True)
    _number(profile.get("gamma"), "profile.gamma", positive=True)
    if "support" in profile and profile["support"] is not None:
        _number(profile["support"], "profile.support")
    perturbation = profile.get("perturbation", {"kind": "none"})
    if not isinstance(perturbation, dict) or perturbation.get("kind", "none") not in PERTURBATION_KINDS:
        raise SchemaError(f"'profile.perturbation.kind' must be one of {PERTURBATION_KINDS}")

    command = document["command"]
    if not isinstance(command, dict):
        raise SchemaError("'command' must be an object")
    for key in ("xi", "mu", "mus", "times", "tau", "snapshots"):
        if key in command:
            _number_list(command[key], f"command.{key}")
    for key in ("h", "half_width"):
        if key in command:
            _number(command[key], f"command.{key}", positive=True)
    for key in ("alpha", "t", "t_end"):
        if key in command:
            _number(command[key], f"command.{key}")
    if "workers" in command and (not isinstance(command["workers"], int) or command["workers"] < 1):
        raise SchemaError("'command.workers' must be a positive integer")
    x_range = command.get("x_range")
    if x_range is not None:
        if not (isinstance(x_range, list) and len(x_range) == 3):
            raise SchemaError("'command.x_range' must be [start, stop, count]")
        _number(x_range[0], "command.x_range")
        _number(x_range[1], "command.x_range")
        if not isinstance(x_range[2], int) or x_range[2] < 2:
            raise SchemaError("'command.x_range' count must be an integer >= 2")
    for pair in command.get("v", []):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError("'command.v' entries must be [re, im] pairs")
        _number_list(pair, "command.v")

    output = document["output"]
    if not isinstance(output, dict) or not isinstance(output.get("path"), str):
        raise SchemaError("'output.path' must be a string")

    tolerances = document["tolerances"]
    if not isinstance(tolerances, dict) or set(tolerances) - _TOLERANCE_KEYS:
        raise SchemaError(f"'tolerances' accepts only {sorted(_TOLERANCE_KEYS)}")
    _number(tolerances["abs"], "tolerances.abs", positive=True)
    _number(tolerances["rel"], "tolerances.rel", positive=True)
    if not isinstance(tolerances["depth"], int) or tolerances["depth"] < 1:
        raise SchemaError("'tolerances.depth' must be a positive integer")

    if document["phi_mode"] not in PHI_MODES:
        raise SchemaError(f"'phi_mode' must be one of {PHI_MODES}")
    if document["power_base"] not in POWER_BASES:
        raise SchemaError(f"'power_base' must be one of {POWER_BASES}")
    if str(document["case"]) not in CASES:
        raise SchemaError(f"'case' must be one of {CASES}")
    kappa = document["kappa"]
    if not (isinstance(kappa, list) and len(kappa) == 2):
        raise SchemaError("'kappa' must be [re, im]")
    value = complex(_number(kappa[0], "kappa"), _number(kappa[1], "kappa"))
    if abs(abs(value) - 1.0) > 1e-12:
        raise SchemaError(f"'kappa' must be unimodular, |kappa| = {abs(value)}")


def build_config(document=None, overrides=None):
    """
    Merge a document and overrides over DEFAULTS, validate, and freeze.

    Args:
        document (dict, optional): Parsed JSON configuration.
        overrides (dict, optional): Values from command-line flags.

    Returns:
        RunConfig: The validated configuration.
    """
    merged = _merge(DEFAULTS, document or {})
    merged = _merge(merged, overrides or {})
    validate_document(merged)
    tolerances = merged["tolerances"]
    spec = QuadratureSpec(abs_tol=float(tolerances["abs"]), rel_tol=float(tolerances["rel"]),
                          max_depth=int(tolerances["depth"]))
    kappa = complex(merged["kappa"][0], merged["kappa"][1])
    config = RunConfig(profile=merged["profile"], command=merged["command"],
                       output_path=merged["output"]["path"], tolerances=spec,
                       phi_mode=merged["phi_mode"], power_base=merged["power_base"],
                       case=str(merged["case"]), kappa=kappa, document=merged)
    logger.debug("[Config] %s", json.dumps(config.metadata(), default=str))
    return config


def load_config(path, overrides=None):
    """Read a JSON configuration file and build the RunConfig."""
    try:
        with open(path, encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read configuration '{path}': {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"configuration '{path}' is not valid JSON: {exc}") from exc
    logger.info("[Config] loaded %s", path)
    return build_config(document, overrides)
