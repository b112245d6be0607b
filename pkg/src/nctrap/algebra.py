"""Noncommutative parameters, trap configuration and the Bopp shift.

The planar deformed algebra is

    [x̂_1, x̂_2] = i ξ² θ,   [p̂_1, p̂_2] = i ξ² η,   [x̂_i, p̂_j] = i ħ δ_ij

with ξ = (1 + θη/4ħ²)^(-1/2). It is realized on canonical variables by

    x̂_i = ξ (x_i - θ ε_ij p_j / 2ħ),   p̂_i = ξ (p_i + η ε_ij x_j / 2ħ).

All functions accept float, Fraction or extended-precision scalars and keep
the result in the same backend.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

from . import _numeric
from .constants import TrapScales, UnitSystem
from .errors import DomainError

EPSILON = ((0, 1), (-1, 0))


def _check_nonnegative(name, value):
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")


class Xi(NamedTuple):
    """Scaling factor ξ and its deviation 1 - ξ, computed without cancellation."""

    xi: object
    deviation: object


def deformation_u(theta, eta, hbar):
    """u = θη / 4ħ², the dimensionless product controlling ξ."""
    return theta * eta / (4 * hbar * hbar)


def xi_factor(theta, eta, hbar=1):
    """Return ξ = (1 + θη/4ħ²)^(-1/2) together with 1 - ξ.

    The deviation is evaluated as u / ((1 + u) + sqrt(1 + u)) so that it stays
    accurate when θη/ħ² is far below double-precision epsilon.
    """
    _check_nonnegative("theta", theta)
    _check_nonnegative("eta", eta)
    u = deformation_u(theta, eta, hbar)
    root = _numeric.sqrt(1 + u)
    return Xi(xi=1 / root, deviation=u / ((1 + u) + root))


def eta_from_c(theta, c_const):
    """η = θ / c²."""
    _check_nonnegative("theta", theta)
    if not c_const > 0:
        raise DomainError(f"c_const must be positive, got {c_const}")
    return theta / (c_const * c_const)


def c_from(theta, eta):
    """Inverse of :func:`eta_from_c`: c = sqrt(θ/η)."""
    if not (theta > 0 and eta > 0):
        raise DomainError("c is defined only for theta > 0 and eta > 0")
    return _numeric.sqrt(theta / eta)


def b_eta(eta, charge, hbar):
    """Intrinsic magnetic field η/(qħ) in SI form (Tesla when inputs are SI)."""
    _check_nonnegative("eta", eta)
    if not charge > 0:
        raise DomainError(f"charge must be positive, got {charge}")
    return eta / (charge * hbar)


@dataclass(frozen=True)
class NCParams:
    """Position (θ) and momentum (η) noncommutativity in a given unit system.

    ``hbar`` must be the value of ħ in the same units as θ and η (1 in
    TrapUnits). Use :meth:`from_c` to tie η to θ through η = θ/c².
    """

    theta: object
    eta: object
    hbar: object = 1

    def __post_init__(self):
        _check_nonnegative("theta", self.theta)
        _check_nonnegative("eta", self.eta)
        if not self.hbar > 0:
            raise DomainError("hbar must be positive")
        if deformation_u(self.theta, self.eta, self.hbar) == 1:
            raise DomainError(
                "theta*eta = 4 hbar^2 makes the Bopp map singular (K = 0)"
            )

    @classmethod
    def from_c(cls, theta, c_const, hbar=1):
        return cls(theta=theta, eta=eta_from_c(theta, c_const), hbar=hbar)

    @classmethod
    def commutative(cls, hbar=1):
        zero = hbar * 0
        return cls(theta=zero, eta=zero, hbar=hbar)

    @property
    def u(self):
        return deformation_u(self.theta, self.eta, self.hbar)

    @property
    def xi_sq(self):
        return 1 / (1 + self.u)

    @property
    def xi(self):
        return xi_factor(self.theta, self.eta, self.hbar).xi

    @property
    def xi_deviation(self):
        return xi_factor(self.theta, self.eta, self.hbar).deviation

    @property
    def c_const(self):
        """sqrt(θ/η), or None when either parameter vanishes."""
        if self.theta > 0 and self.eta > 0:
            return c_from(self.theta, self.eta)
        return None

    @property
    def is_commutative(self):
        return self.theta == 0 and self.eta == 0


@dataclass(frozen=True)
class TrapConfig:
    """Ion in a uniform field along x3 and a harmonic planar potential.

    ``B`` enters only through the cyclotron frequency ω_c = qB/μ (SI form).
    In TrapUnits take mass = charge = omega_rho = 1 so that B equals ω_c.
    """

    mass: object
    charge: object
    B: object
    omega_rho: object
    omega_z: object = None

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError("mass must be positive")
        if not self.charge > 0:
            raise DomainError("charge must be positive")
        if not self.omega_rho > 0:
            raise DomainError("omega_rho must be positive")
        if self.B < 0:
            raise DomainError("B must be non-negative")

    @classmethod
    def trap_units(cls, omega_c, omega_z=None, mass=1, omega_rho=1):
        return cls(mass=mass, charge=mass * 0 + 1, B=omega_c,
                   omega_rho=omega_rho, omega_z=omega_z)

    @classmethod
    def si(cls, mass_amu, B, omega_rho, charge_e=1, omega_z=None,
           precision="double"):
        units = UnitSystem.si(precision)
        conv = lambda v: None if v is None else _numeric.convert(v, precision)  # noqa: E731
        return cls(mass=conv(mass_amu) * units.amu,
                   charge=conv(charge_e) * units.e_charge,
                   B=conv(B), omega_rho=conv(omega_rho), omega_z=conv(omega_z))

    def with_field(self, B):
        return TrapConfig(self.mass, self.charge, B, self.omega_rho, self.omega_z)

    @property
    def kappa(self):
        return self.mass * self.omega_rho ** 2

    @property
    def omega_c(self):
        return self.charge * self.B / self.mass

    @property
    def omega_P_sq(self):
        return self.omega_rho ** 2 + self.omega_c ** 2 / 4

    @property
    def omega_P(self):
        return _numeric.sqrt(self.omega_P_sq)


@dataclass(frozen=True)
class BoppMap:
    """Linear map expressing (x̂1, x̂2, p̂1, p̂2) in (x1, x2, p1, p2).

    Stored as ``scale * core``: ``scale`` is ξ and ``core`` holds the
    bracketed coefficients. Keeping them apart lets exact arithmetic work on
    ``core`` (rational when θ, η, ħ are) while ξ² stays rational too.
    """

    scale: object
    scale_sq: object
    core: tuple = field(repr=False)

    @property
    def matrix(self):
        import numpy as np

        return float(self.scale) * np.array(
            [[float(v) for v in row] for row in self.core]
        )

    def determinant(self):
        # block form ξ [[I, -aε], [bε, I]] gives det = ξ⁴ (1 - ab)²
        a = -self.core[0][3]
        b = self.core[2][1]
        return self.scale_sq ** 2 * (1 - a * b) ** 2

    def apply_core(self, variables):
        """Apply only the bracketed part; multiply results by ``scale``."""
        out = []
        for row in self.core:
            acc = None
            for coeff, var in zip(row, variables):
                if coeff == 0:
                    continue
                term = var * coeff
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else variables[0] * 0)
        return out

    def apply(self, variables):
        return [v * self.scale for v in self.apply_core(variables)]


def bopp_map(nc):
    """Bopp-shift realization of the deformed algebra for ``nc``."""
    a = nc.theta / (2 * nc.hbar)
    b = nc.eta / (2 * nc.hbar)
    one, zero = 1 + 0 * a, 0 * a
    core = (
        (one, zero, zero, -a),
        (zero, one, a, zero),
        (zero, b, one, zero),
        (-b, zero, zero, one),
    )
    return BoppMap(scale=nc.xi, scale_sq=nc.xi_sq, core=core)


class LadderCoefficients(NamedTuple):
    """â = scale * (x̂ + i * mixing * p̂)."""

    scale: object
    mixing: object


def deformed_ladder_coeffs(nc):
    """Coefficients of the deformed annihilation operator.

    scale = sqrt(sqrt(η/θ) / 2ħ), mixing = (η/θ)^(-1/2). With η/θ = c⁻² these
    coincide with :func:`undeformed_ladder_coeffs` for the same c.
    """
    if not (nc.theta > 0 and nc.eta > 0):
        raise DomainError("deformed ladder operators need theta > 0 and eta > 0")
    root = _numeric.sqrt(nc.eta / nc.theta)
    return LadderCoefficients(scale=_numeric.sqrt(root / (2 * nc.hbar)),
                              mixing=1 / root)


def undeformed_ladder_coeffs(c_const, hbar=1):
    """a = sqrt(1/2cħ) (x + i c p)."""
    if not c_const > 0:
        raise DomainError("c_const must be positive")
    return LadderCoefficients(scale=_numeric.sqrt(1 / (2 * c_const * hbar)),
                              mixing=c_const)


def to_trap_units(trap, nc):
    """Express an SI trap and NC parameters in TrapUnits.

    Returns ``(trap_tu, nc_tu, scales)``; ``scales`` reverses the mapping
    via :func:`from_trap_units`.
    """
    scales = TrapScales(mass=trap.mass, omega_rho=trap.omega_rho, hbar=nc.hbar,
                        charge=trap.charge)
    one = trap.mass / trap.mass
    omega_z = None if trap.omega_z is None else trap.omega_z / trap.omega_rho
    trap_tu = TrapConfig(mass=one, charge=one, B=trap.omega_c / trap.omega_rho,
                         omega_rho=one, omega_z=omega_z)
    nc_tu = NCParams(theta=nc.theta / scales.area,
                     eta=nc.eta / scales.momentum_sq, hbar=one)
    return trap_tu, nc_tu, scales


def from_trap_units(trap_tu, nc_tu, scales):
    """Inverse of :func:`to_trap_units`."""
    omega_c = trap_tu.omega_c * scales.omega_rho
    omega_z = None if trap_tu.omega_z is None else trap_tu.omega_z * scales.omega_rho
    trap = TrapConfig(mass=trap_tu.mass * scales.mass, charge=scales.charge,
                      B=omega_c * scales.mass / scales.charge,
                      omega_rho=trap_tu.omega_rho * scales.omega_rho,
                      omega_z=omega_z)
    nc = NCParams(theta=nc_tu.theta * scales.area,
                  eta=nc_tu.eta * scales.momentum_sq, hbar=scales.hbar)
    return trap, nc
