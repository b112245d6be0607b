"""Physical constants and unit systems.

Values are CODATA 2018. The elementary charge, Planck constant, speed of
light and electron-volt are exact in the revised SI; the atomic mass
constant is measured. Values are kept as decimal strings so they can be
loaded at any precision.

Two unit systems are supported:

``SI``
    everything in kg, m, s, C, T.
``TrapUnits``
    dimensionless, with hbar = mu = omega_rho = 1 (and q = 1, so the
    cyclotron frequency equals the field value).
"""

import json
from dataclasses import dataclass

from . import _numeric
from .errors import DomainError

PLANCK_H = "6.62607015e-34"
C_LIGHT = "299792458"
E_CHARGE = "1.602176634e-19"
AMU = "1.66053906660e-27"
EV = "1.602176634e-19"


def _hbar_string(digits=40):
    h = _numeric.EXT.mpf(PLANCK_H)
    return _numeric.EXT.nstr(h / (2 * _numeric.EXT.pi), digits)


HBAR = _hbar_string()

CONSTANTS = {
    "hbar_si": HBAR,
    "c_light_si": C_LIGHT,
    "e_charge_si": E_CHARGE,
    "amu_si": AMU,
    "ev_si": EV,
}

SI_MODE = "SI"
TRAP_MODE = "TrapUnits"


@dataclass(frozen=True)
class UnitSystem:
    """Constants of a unit system, evaluated at a given precision."""

    mode: str
    hbar: object
    c_light: object
    e_charge: object
    amu: object
    ev: object

    @classmethod
    def si(cls, precision="double"):
        # in exact mode hbar (irrational) is represented by its 40-digit decimal
        conv = lambda s: _numeric.convert(s, precision)  # noqa: E731
        return cls(
            mode=SI_MODE,
            hbar=conv(HBAR),
            c_light=conv(C_LIGHT),
            e_charge=conv(E_CHARGE),
            amu=conv(AMU),
            ev=conv(EV),
        )

    @classmethod
    def trap_units(cls, precision="double"):
        one = _numeric.convert(1, precision)
        # c_light, e_charge, amu and ev have no meaning here
        return cls(mode=TRAP_MODE, hbar=one, c_light=None, e_charge=one,
                   amu=None, ev=None)

    @classmethod
    def from_mode(cls, mode, precision="double"):
        if mode == SI_MODE:
            return cls.si(precision)
        if mode == TRAP_MODE:
            return cls.trap_units(precision)
        raise DomainError(f"unknown unit system {mode!r}")


def constants_table():
    """Constant table as decimal strings, keyed as in ``constants.json``."""
    return dict(CONSTANTS)


def write_constants_json(path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(constants_table(), fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass(frozen=True)
class TrapScales:
    """SI scales defining TrapUnits for one ion and trap.

    length = sqrt(hbar / (mu omega_rho)), time = 1 / omega_rho, mass = mu.
    """

    mass: float
    omega_rho: float
    hbar: float
    charge: float = 1.0

    @property
    def length(self):
        return _numeric.sqrt(self.hbar / (self.mass * self.omega_rho))

    @property
    def momentum(self):
        return _numeric.sqrt(self.hbar * self.mass * self.omega_rho)

    @property
    def energy(self):
        return self.hbar * self.omega_rho

    @property
    def area(self):
        return self.hbar / (self.mass * self.omega_rho)

    @property
    def momentum_sq(self):
        return self.hbar * self.mass * self.omega_rho
