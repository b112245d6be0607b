"""Order-of-magnitude sensitivity and rate arithmetic for a trapped-ion test.

Everything here is SI. Physical noncommutativity is far below double
precision relative to unity (θη/ħ² ~ 10⁻⁷⁴), so scenarios are evaluated
on the extended-precision backend and only converted to float at the end.
"""

import math
from dataclasses import dataclass, field

from . import _numeric, spectra
from .algebra import NCParams, TrapConfig, b_eta
from .constants import UnitSystem
from .errors import DomainError, ModelValidityError

#: order-of-magnitude figures the calculations are compared against
REFERENCE_ESTIMATES = {
    "B_eta": 1e-14,
    "eta_term": {1e-9: 1e-5, 1e-12: 1e-2},
    "theta_term": {1e-9: 1e-36, 1e-12: 1e-39},
    "delta_J0_hbar": {1e-9: 1e-5, 1e-12: 1e-2},
    "nonlimit_theta_term": 1e-20,
    "nonlimit_eta_term": 1e-17,
    "rate": 1e-5,
}

DEFAULT_FIELDS = (1e-9, 1e-12)
DEFAULT_MASS_NUMBER = 100
DEFAULT_OMEGA_RHO = 2 * math.pi * 1e6
#: 10⁻⁶ × (1 eV per 1 m/s), in kg·m/s
DEFAULT_P_BAR = 1e-6 * 1.602176634e-19

THETA_SCALE_EV = 1e13  # 10 TeV
SQRT_ETA_SCALE_EV = 1e-6  # 1 μeV


def log10_ratio(value, reference):
    """|log₁₀(value/reference)|."""
    return abs(math.log10(float(value) / float(reference)))


def within_factor(value, reference, factor):
    return log10_ratio(value, reference) <= math.log10(factor)


def orders_apart(value, reference):
    """Distance between the nearest powers of ten of two positive numbers."""
    return abs(round(math.log10(float(value))) - round(math.log10(float(reference))))


@dataclass(frozen=True)
class BoundsConfig:
    """Upper bounds on θ (m²) and η ((kg·m/s)²)."""

    theta_max: object
    eta_max: object

    def scaled(self, s):
        return BoundsConfig(self.theta_max * s, self.eta_max * s)

    def nc_params(self, hbar):
        return NCParams(theta=self.theta_max, eta=self.eta_max, hbar=hbar)


def default_bounds(precision="extended"):
    """θ_max = (ħc / 10 TeV)² and η_max = (1 μeV / c)² from the constant table."""
    units = UnitSystem.si(precision)
    ev = units.ev
    theta_max = (units.hbar * units.c_light / (THETA_SCALE_EV * ev)) ** 2
    eta_max = (SQRT_ETA_SCALE_EV * ev / units.c_light) ** 2
    return BoundsConfig(theta_max=theta_max, eta_max=eta_max)


def default_ion(B, mass_number=DEFAULT_MASS_NUMBER, omega_rho=DEFAULT_OMEGA_RHO,
                charge_e=1, precision="extended"):
    return TrapConfig.si(mass_amu=mass_number, B=B, omega_rho=omega_rho,
                         charge_e=charge_e, precision=precision)


@dataclass(frozen=True)
class ScenarioReport:
    """Kinetic-ground signal at one shielded field value.

    ``eta_term`` is η/Għ, ``theta_term`` Gθ/4ħ and ``delta_J0_hbar`` the
    drop of the lowest angular-momentum level, ξ²(θ term + η term)/2, all
    in units of ħ.
    """

    B: float
    B_eta: float
    eta_term: float
    theta_term: float
    delta_J0_hbar: float
    flags: dict = field(default_factory=dict)


def scenario(B, trap=None, bounds=None, precision="extended"):
    """Evaluate the signal terms at field ``B`` (Tesla) with NC at the bounds."""
    if bounds is None:
        bounds = default_bounds(precision)
    Bc = _numeric.convert(B, precision)
    if not Bc > 0:
        raise DomainError("B must be positive; for B = 0 use spectra.jz_tilde_signal")
    if trap is None:
        trap = default_ion(Bc, precision=precision)
    else:
        trap = trap.with_field(Bc)
    hbar = UnitSystem.si(precision).hbar
    nc = bounds.nc_params(hbar)
    ep = spectra.effective_params(trap, nc)
    sig, _ = spectra.jz_star_signal(ep, nc)
    B_eta = b_eta(nc.eta, trap.charge, hbar)
    eta_term, theta_term = float(sig.eta_term), float(sig.theta_term)
    flags = {
        "theta_negligible": theta_term < 1e-6 * eta_term,
        "B_much_greater_than_B_eta": float(Bc) >= 10 * float(B_eta),
        "B_below_B_eta": float(Bc) < float(B_eta),
    }
    return ScenarioReport(B=float(Bc), B_eta=float(B_eta), eta_term=eta_term,
                          theta_term=theta_term, delta_J0_hbar=float(sig.delta_J0_hbar),
                          flags=flags)


@dataclass(frozen=True)
class NonlimitEstimate:
    """θp̄²/ħ² and ηx̄²/ħ² with x̄ = ħ/p̄ (both in units of ħ)."""

    p_bar: float
    x_bar: float
    theta_term: float
    eta_term: float


def nonlimit_estimates(p_bar=DEFAULT_P_BAR, bounds=None, precision="extended"):
    if bounds is None:
        bounds = default_bounds(precision)
    p = _numeric.convert(p_bar, precision)
    if not p > 0:
        raise DomainError("p_bar must be positive")
    hbar = UnitSystem.si(precision).hbar
    x = hbar / p
    return NonlimitEstimate(p_bar=float(p), x_bar=float(x),
                            theta_term=float(bounds.theta_max * p ** 2 / hbar ** 2),
                            eta_term=float(bounds.eta_max * x ** 2 / hbar ** 2))


def p_bar_from_ion(mass_number, v_bar, precision="extended"):
    """Momentum A·m_u·v̄ of a cooled ion."""
    units = UnitSystem.si(precision)
    return float(_numeric.convert(mass_number, precision) * units.amu
                 * _numeric.convert(v_bar, precision))


def hard_sphere_cross_section(radius):
    """π(2r)² for two equal hard spheres."""
    return math.pi * (2 * radius) ** 2


def coincidence_efficiency(solid_angle_fraction=0.01):
    """Both outgoing ions inside the open solid angle."""
    return solid_angle_fraction ** 2


DEFAULT_SIGMA = 1e-20
DEFAULT_N_TRAPPED = 1e10
DEFAULT_CURRENT = 1e9
#: calibrated so that the default inputs give 10⁻⁵ s⁻¹
DEFAULT_BEAM_AREA = 1.0
#: one coincidence per day over a year
DEFAULT_EVENTS_NEEDED = 365
THIN_TARGET_LIMIT = 1e-2


@dataclass(frozen=True)
class RatePlan:
    sigma_total: float
    solid_angle_fraction: float
    coincidence_efficiency: float
    n_trapped: float
    beam_current: float
    beam_area: float
    rate: float
    events_needed: float
    runtime_for_spectrum: float


def _check_thin(n_trapped, sigma, area):
    opacity = n_trapped * sigma / area
    if opacity >= THIN_TARGET_LIMIT:
        raise ModelValidityError(
            f"N sigma / A = {opacity:.3g} >= {THIN_TARGET_LIMIT}: single-scattering "
            "model does not apply"
        )
    return opacity


def rate_plan(sigma_total=DEFAULT_SIGMA, solid_angle_fraction=0.01, n_trapped=DEFAULT_N_TRAPPED,
              beam_current=DEFAULT_CURRENT, beam_area=DEFAULT_BEAM_AREA,
              events_needed=DEFAULT_EVENTS_NEEDED, efficiency=None):
    """Coincidence rate I · (Nσ/A) · ε in a thin-target, single-scattering model.

    ``efficiency`` overrides ε = (solid-angle fraction)².
    """
    for name, v in (("sigma_total", sigma_total), ("n_trapped", n_trapped),
                    ("beam_current", beam_current), ("beam_area", beam_area),
                    ("events_needed", events_needed)):
        if not v > 0:
            raise DomainError(f"{name} must be positive")
    eps = coincidence_efficiency(solid_angle_fraction) if efficiency is None else efficiency
    if not 0 < eps <= 1:
        raise DomainError("coincidence efficiency must lie in (0, 1]")
    opacity = _check_thin(n_trapped, sigma_total, beam_area)
    rate = beam_current * opacity * eps
    return RatePlan(sigma_total=sigma_total, solid_angle_fraction=solid_angle_fraction,
                    coincidence_efficiency=eps, n_trapped=n_trapped,
                    beam_current=beam_current, beam_area=beam_area, rate=rate,
                    events_needed=events_needed, runtime_for_spectrum=events_needed / rate)


def required_current(target_rate, plan):
    """Beam current giving ``target_rate`` with the other factors of ``plan``."""
    if not target_rate > 0:
        raise DomainError("target_rate must be positive")
    opacity = _check_thin(plan.n_trapped, plan.sigma_total, plan.beam_area)
    return target_rate / (opacity * plan.coincidence_efficiency)
