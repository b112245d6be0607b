"""Run configuration: JSON file plus dotted-path overrides.

A configuration looks like::

    {
      "unit_system": "TrapUnits",
      "trap": {"B_tesla": 0.5},
      "nc": {"theta": 0.1, "eta": 0.04},
      "n_max": 5
    }

See ``docs/config.md`` for every key.
"""

import copy
import json
import math

import numpy as np

from . import _numeric
from .algebra import NCParams, TrapConfig
from .constants import SI_MODE, TRAP_MODE, UnitSystem
from .errors import DomainError


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


DEFAULTS = {
    "unit_system": None,
    "trap": {},
    "nc": {},
    "n_max": 5,
    "oracle": {"n_per_mode": 30, "n_levels": 10, "tolerances": {}},
    "sweep": None,
    "sensitivity": {},
    "dirac": {"G": 2, "K": 1},
    "output": {"format": None, "path": None},
}


def load(path=None):
    """Defaults merged with the JSON file at ``path`` (if given)."""
    cfg = copy.deepcopy(DEFAULTS)
    if path is None:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            user = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(user, dict):
        raise ConfigError("config must be a JSON object")
    return merge(cfg, user)


def merge(base, override):
    out = copy.deepcopy(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def parse_value(text):
    """JSON value if it parses, else the raw string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_override(cfg, assignment):
    """Apply ``a.b.c=value`` in place."""
    if "=" not in assignment:
        raise ConfigError(f"--set expects key=value, got {assignment!r}")
    key, _, raw = assignment.partition("=")
    parts = [p for p in key.strip().split(".") if p]
    if not parts:
        raise ConfigError("empty key in --set")
    set_path(cfg, parts, parse_value(raw.strip()))
    return cfg


def set_path(cfg, parts, value):
    node = cfg
    for p in parts[:-1]:
        if node.get(p) is None:
            node[p] = {}
        if not isinstance(node[p], dict):
            raise ConfigError(f"cannot descend into non-object at {p!r}")
        node = node[p]
    node[parts[-1]] = value


def _number(section, key, default=None, required=False):
    v = section.get(key, default)
    if v is None:
        if required:
            raise ConfigError(f"missing required key {key!r}")
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key} must be a number, got {v!r}")
    if not math.isfinite(v):
        raise ConfigError(f"{key} must be finite")
    return v


def precision_for(cfg):
    return cfg.get("precision") or _numeric.default_precision()


def build_trap(cfg):
    """TrapConfig from the ``trap`` section in the configured unit system."""
    mode = cfg.get("unit_system") or TRAP_MODE
    t = cfg.get("trap") or {}
    prec = precision_for(cfg)
    conv = lambda v: None if v is None else _numeric.convert(v, prec)  # noqa: E731
    B = _number(t, "B_tesla", 0.0)
    omega_z = _number(t, "omega_z")
    try:
        if mode == TRAP_MODE:
            return TrapConfig(mass=conv(_number(t, "mass", 1)),
                              charge=conv(_number(t, "charge_e", 1)),
                              B=conv(B), omega_rho=conv(_number(t, "omega_rho", 1)),
                              omega_z=conv(omega_z))
        if mode == SI_MODE:
            units = UnitSystem.si(prec)
            if ("mass_amu" in t) == ("mass_kg" in t):
                raise ConfigError("SI trap needs exactly one of mass_amu, mass_kg")
            mass = (conv(_number(t, "mass_amu")) * units.amu if "mass_amu" in t
                    else conv(_number(t, "mass_kg")))
            return TrapConfig(mass=mass, charge=conv(_number(t, "charge_e", 1)) * units.e_charge,
                              B=conv(B),
                              omega_rho=conv(_number(t, "omega_rho", required=True)),
                              omega_z=conv(omega_z))
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown unit_system {mode!r}")


def build_nc(cfg):
    """NCParams from the ``nc`` section.

    ``theta`` (default 0) plus at most one of ``eta``, ``c_const`` or
    ``c_squared``; η = θ/c² for the latter two, η = 0 if none is given.
    """
    n = cfg.get("nc") or {}
    prec = precision_for(cfg)
    mode = cfg.get("unit_system") or TRAP_MODE
    hbar = UnitSystem.from_mode(mode, prec).hbar if mode in (SI_MODE, TRAP_MODE) else None
    if hbar is None:
        raise ConfigError(f"unknown unit_system {mode!r}")
    given = [k for k in ("eta", "c_const", "c_squared") if n.get(k) is not None]
    if len(given) > 1:
        raise ConfigError("nc takes only one of eta, c_const, c_squared")
    theta = _numeric.convert(_number(n, "theta", 0.0), prec)
    key = given[0] if given else None
    if key is None:
        return NCParams(theta=theta, eta=theta * 0, hbar=hbar)
    value = _numeric.convert(_number(n, key), prec)
    try:
        if key == "eta":
            return NCParams(theta=theta, eta=value, hbar=hbar)
        if not value > 0:
            raise ConfigError(f"{key} must be positive")
        c_sq = value * value if key == "c_const" else value
        return NCParams(theta=theta, eta=theta / c_sq, hbar=hbar)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def n_max(cfg):
    v = cfg.get("n_max", 5)
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ConfigError("n_max must be a non-negative integer")
    return v


def sweep_values(cfg):
    """Values of the sweep section, either listed or as a log range [lo, hi, count]."""
    sw = cfg.get("sweep")
    if not isinstance(sw, dict) or not sw.get("parameter"):
        raise ConfigError("sweep section with a parameter path is required")
    if ("values" in sw) == ("log_range" in sw):
        raise ConfigError("sweep needs exactly one of values, log_range")
    if "values" in sw:
        values = sw["values"]
        if not isinstance(values, list):
            raise ConfigError("sweep.values must be a list")
    else:
        lr = sw["log_range"]
        if not (isinstance(lr, list) and len(lr) == 3 and lr[0] > 0 and lr[1] > 0
                and isinstance(lr[2], int) and lr[2] >= 1):
            raise ConfigError("sweep.log_range must be [low > 0, high > 0, count >= 1]")
        values = [float(v) for v in np.logspace(math.log10(lr[0]), math.log10(lr[1]), lr[2])]
    if not values:
        raise ConfigError("sweep values must be nonempty")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ConfigError(f"sweep value {v!r} is not a finite number")
    return sw["parameter"], values


def inputs_echo(cfg):
    """Config sections that determine a spectrum, for embedding in reports."""
    return {"unit_system": cfg.get("unit_system") or TRAP_MODE, "trap": cfg.get("trap") or {},
            "nc": cfg.get("nc") or {}, "n_max": cfg.get("n_max")}
