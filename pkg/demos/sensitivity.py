"""
How large is the signal in a real trap?
=======================================

Bounds on theta and eta, the resulting shift of the lowest angular
momentum at two shielded fields, and the coincidence rate of the
proposed scattering measurement.
"""

from nctrap import planner
from nctrap.algebra import b_eta
from nctrap.constants import UnitSystem

bounds = planner.default_bounds()
units = UnitSystem.si("extended")
print(f"theta_max = {float(bounds.theta_max):.3e} m^2")
print(f"eta_max   = {float(bounds.eta_max):.3e} (kg m/s)^2")
print(f"B_eta     = {float(b_eta(bounds.eta_max, units.e_charge, units.hbar)):.3e} T")

###############################################################################
# An ion of mass number 100 in a 1 MHz trap. The eta term dominates, and
# it grows as the field is shielded towards B_eta.

for B in (1e-9, 1e-10, 1e-11, 1e-12):
    s = planner.scenario(B, bounds=bounds)
    print(f"B = {B:.0e} T   eta/Gh = {s.eta_term:.3e}   G theta/4h = {s.theta_term:.3e}"
          f"   dJ0/hbar = {s.delta_J0_hbar:.3e}")

###############################################################################
# Away from the kinetic ground the corrections are set by the momentum
# scale of a laser-cooled ion.

nl = planner.nonlimit_estimates(planner.DEFAULT_P_BAR, bounds)
print(f"theta p^2/hbar^2 = {nl.theta_term:.2e}   eta x^2/hbar^2 = {nl.eta_term:.2e}")

###############################################################################
# Coincidence rate for a thin trapped target.

plan = planner.rate_plan()
print(f"rate = {plan.rate:.1e} 1/s, about {plan.rate * 86400:.2f} per day")
print(f"{plan.events_needed:.0f} events take {plan.runtime_for_spectrum / 86400:.0f} days")
print(f"current for one event per hour: {planner.required_current(1 / 3600, plan):.2e} 1/s")
