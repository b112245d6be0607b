"""Cross-module invariants."""

import dataclasses
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nctrap.algebra import NCParams, TrapConfig
from nctrap.dirac import (
    kinetic_ground_hamiltonian,
    poisson,
    primary_constraints,
    reduce_to_one_dof,
)
from nctrap.spectra import chiral_frequencies, effective_params, jz_star_signal, reduced_system

pos = st.fractions(Fraction(1, 10), 5, max_denominator=40)
# θη < 4ħ² keeps the Bopp map regular
small = st.fractions(0, Fraction(19, 10), max_denominator=40)


@settings(max_examples=80, deadline=None)
@given(pos, pos, pos, small, small)
def test_signal_below_commutative_values(mu, wr, wc, theta, eta):
    assume(theta + eta > 0)
    trap = TrapConfig(mass=mu, charge=Fraction(1), B=wc * mu, omega_rho=wr)
    nc = NCParams(theta, eta)
    sig, levels = jz_star_signal(effective_params(trap, nc), nc, 3)
    assert sig.dev > 0
    assert sig.J0_hbar < Fraction(1, 2) and sig.interval_hbar < 1
    assert sig.dev == nc.xi_sq * (sig.theta_term + sig.eta_term)
    assert all(b - a == sig.interval_hbar for a, b in zip(levels, levels[1:]))


@settings(max_examples=80, deadline=None)
@given(pos, pos, pos, small, small)
def test_dirac_reduction_agrees_with_closed_form(mu, wr, wc, theta, eta):
    trap = TrapConfig(mass=mu, charge=Fraction(1), B=wc * mu, omega_rho=wr)
    ep = effective_params(trap, NCParams(theta, eta))
    rs = reduced_system(ep)
    red = reduce_to_one_dof(kinetic_ground_hamiltonian(ep.K, rs.E_k0), primary_constraints(ep.G))
    assert red.mu_star == rs.mu_star and red.omega_star_sq == rs.omega_star ** 2
    assert red.offset == rs.E_k0 and red.bracket == 1


@settings(max_examples=80, deadline=None)
@given(pos, pos, st.fractions(0, 5, max_denominator=40), small, small)
def test_chiral_frequencies_positive(mu, wr, wc, theta, eta):
    ep = effective_params(TrapConfig(mass=mu, charge=Fraction(1), B=wc * mu, omega_rho=wr),
                          NCParams(theta, eta))
    w = chiral_frequencies(ep)
    assert w.stable and w.omega_plus >= w.omega_minus > 0


@settings(max_examples=40, deadline=None)
@given(st.fractions(Fraction(-3), 3, max_denominator=9).filter(bool))
def test_constraint_bracket_is_G(G):
    cs = primary_constraints(G)
    assert poisson(*cs.constraints) == G
    assert cs.matrix[0][1] * cs.inverse[1][0] == 1


def test_values_are_immutable():
    nc = NCParams(0.1, 0.04)
    trap = TrapConfig.trap_units(0.5)
    ep = effective_params(trap, nc)
    for obj, name in ((nc, "theta"), (trap, "B"), (ep, "M"), (reduced_system(ep), "mu_star")):
        with pytest.raises(dataclasses.FrozenInstanceError):
            setattr(obj, name, 0)
