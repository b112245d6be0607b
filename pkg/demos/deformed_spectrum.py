"""
Spectra of a trapped ion in deformed phase space
================================================

Effective parameters, the kinetic-ground reduced system and the
angular-momentum signal, first in exact arithmetic and then at B = 0.
"""

from fractions import Fraction

from nctrap import (
    NCParams,
    TrapConfig,
    effective_params,
    jz_star_signal,
    jz_tilde_signal,
    kinetic_levels,
    reduced_spectrum,
    reduced_system,
)

# TrapUnits: hbar = mass = omega_rho = 1, cyclotron frequency 1/2.
# Fractions keep every result exact.
trap = TrapConfig.trap_units(Fraction(1, 2))
nc = NCParams(Fraction(1, 10), Fraction(1, 25))
ep = effective_params(trap, nc)

print("xi^2        =", nc.xi_sq)
print("M           =", ep.M, "~", float(ep.M))
print("G           =", ep.G, "~", float(ep.G))
print("M Omega_P^2 =", ep.MOmega_P_sq, "~", float(ep.MOmega_P_sq))
print("K           =", ep.K, "~", float(ep.K))

# K is defined through the other three.
assert ep.K == ep.MOmega_P_sq - ep.G ** 2 / (4 * ep.M)

###############################################################################
# Kinetic energy levels are spaced by omega_0 = G/M. Restricting to the
# lowest one leaves an oscillator with mass G^2/2K and frequency K/G.

print(kinetic_levels(ep, 3).energies)
rs = reduced_system(ep)
print("mu*    =", rs.mu_star)
print("omega* =", rs.omega_star)
print([float(e) for e in reduced_spectrum(ep, 4)])

###############################################################################
# The angular momentum levels shrink by the factor 1 - dev, with dev split
# into a theta part and an eta part.

sig, levels = jz_star_signal(ep, nc, n_max=3)
print("G theta / 4 hbar =", float(sig.theta_term))
print("eta / G hbar     =", float(sig.eta_term))
print("dev              =", float(sig.dev))
print("J_n / hbar       =", [float(j) for j in levels])

###############################################################################
# At B = 0 the coupling G is generated by theta and eta alone. With
# eta = theta / c^2 the signal only depends on c mu omega_rho.

trap0 = TrapConfig.trap_units(Fraction(0))
for c_sq in (Fraction(1, 10), Fraction(1), Fraction(5, 2), Fraction(10)):
    s = jz_tilde_signal(trap0, NCParams(Fraction(1, 10), Fraction(1, 10) / c_sq))
    print(f"c^2 = {str(c_sq):>5}   dev = {str(s.dev):>6}   J0/hbar = {s.J0_hbar}")
