"""Closed-form spectra.

Exact values below were produced by evaluating the uncancelled definitions

    1/2M = ξ²(c₁²/2μ + κθ²/8ħ²),  G/2M = ξ²(c₁c₂/μ + κθ/2ħ),
    MΩ_P² = ξ²(c₂²/μ + κ),        K = MΩ_P² - G²/4M

in Fraction arithmetic, independently of the rearranged forms the library uses.
"""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctrap import _numeric
from nctrap.algebra import NCParams, TrapConfig
from nctrap.errors import ConsistencyError, DomainError, UndefinedReductionError
from nctrap.spectra import (
    chiral_frequencies,
    chiral_levels,
    effective_params,
    jz_star_signal,
    jz_tilde_signal,
    kinetic_levels,
    reduced_spectrum,
    reduced_system,
    tilde_limit,
)

M_EX = Fraction(32032, 32885)
G_EX = Fraction(20696, 32885)
MO_EX = Fraction(10729, 10010)
K_EX = Fraction(31936032, 32917885)
DEV_EX = Fraction(1349125985, 17031713699)


def naive_params(mu, wr, wc, theta, eta, hbar=1):
    """Uncancelled definitions, exact in Fraction arithmetic."""
    kappa = mu * wr ** 2
    xi2 = 1 / (1 + theta * eta / (4 * hbar ** 2))
    c1 = 1 + mu * wc * theta / (4 * hbar)
    c2 = mu * wc / 2 + eta / (2 * hbar)
    M = 1 / (2 * xi2 * (c1 ** 2 / (2 * mu) + kappa * theta ** 2 / (8 * hbar ** 2)))
    G = 2 * M * xi2 * (c1 * c2 / mu + kappa * theta / (2 * hbar))
    MO = xi2 * (c2 ** 2 / mu + kappa)
    return M, G, MO, MO - G ** 2 / (4 * M)


def test_commutative_example():
    ep = effective_params(TrapConfig.trap_units(0.5), NCParams(0.0, 0.0))
    assert (ep.M, ep.G, ep.K) == (1.0, 0.5, 1.0)
    assert ep.Omega_P_sq == 1.0625
    assert (ep.dM, ep.dG, ep.dK) == (0.0, 0.0, 0.0)


def test_deformed_example_exact(trap_exact, nc_exact):
    ep = effective_params(trap_exact, nc_exact)
    assert ep.c1 == Fraction(81, 80) and ep.c2 == Fraction(27, 100)
    assert ep.xi_sq == Fraction(1000, 1001)
    assert (ep.M, ep.G, ep.MOmega_P_sq, ep.K) == (M_EX, G_EX, MO_EX, K_EX)
    assert ep.K == ep.MOmega_P_sq - ep.G ** 2 / (4 * ep.M)
    assert ep.dM == M_EX - 1 and ep.dG == G_EX - Fraction(1, 2) and ep.dK == K_EX - 1


def test_deformed_example_float(trap_float, nc_float):
    ep = effective_params(trap_float, nc_float)
    assert ep.M == pytest.approx(0.9740611220921392, rel=1e-15)
    assert ep.G == pytest.approx(0.6293446860270641, rel=1e-15)
    assert ep.MOmega_P_sq == pytest.approx(1.071828171828172, rel=1e-15)
    assert ep.K == pytest.approx(0.9701726584195796, rel=1e-15)
    assert ep.K == pytest.approx(ep.MOmega_P_sq - ep.G ** 2 / (4 * ep.M), rel=1e-12)


fr = st.fractions(min_value=0, max_value=3, max_denominator=50)
frp = st.fractions(min_value=Fraction(1, 10), max_value=3, max_denominator=50)


@settings(max_examples=60, deadline=None)
@given(frp, frp, fr, fr, fr)
def test_rearranged_forms_equal_definitions_exactly(mu, wr, wc, theta, eta):
    if theta * eta == 4:
        return
    trap = TrapConfig(mass=mu, charge=Fraction(1), B=wc * mu, omega_rho=wr)
    ep = effective_params(trap, NCParams(theta, eta))
    M, G, MO, K = naive_params(mu, wr, wc, theta, eta)
    assert (ep.M, ep.G, ep.MOmega_P_sq, ep.K) == (M, G, MO, K)
    assert ep.dM == M - mu and ep.dG == G - mu * wc and ep.dK == K - mu * wr ** 2


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0, 10),
       st.floats(0, 1.5), st.floats(0, 1.5))
def test_K_identity_and_positivity(mu, wr, wc, theta, eta):
    trap = TrapConfig(mass=mu, charge=1.0, B=wc * mu, omega_rho=wr)
    ep = effective_params(trap, NCParams(theta, eta))
    assert ep.M > 0 and ep.K > 0
    assert ep.K == pytest.approx(ep.MOmega_P_sq - ep.G ** 2 / (4 * ep.M), rel=1e-12)


def test_deviations_resolve_physical_scale():
    # dM, dG, dK at physical θ, η in double precision against 50-digit evaluation
    hbar = 1.054571817646156e-34
    mu, wr, B, q = 100 * 1.6605390666e-27, 2 * math.pi * 1e6, 1e-9, 1.602176634e-19
    theta, eta = 3.8937937217185938e-40, 2.8561392771537566e-67
    ep = effective_params(TrapConfig(mass=mu, charge=q, B=B, omega_rho=wr),
                          NCParams(theta, eta, hbar))
    X = lambda v: _numeric.convert(v, "extended")  # noqa: E731
    ep_x = effective_params(TrapConfig(mass=X(mu), charge=X(q), B=X(B), omega_rho=X(wr)),
                            NCParams(X(theta), X(eta), X(hbar)))
    for a, b in ((ep.dM, ep_x.dM), (ep.dG, ep_x.dG), (ep.dK, ep_x.dK)):
        assert b != 0
        assert a == pytest.approx(float(b), rel=1e-12)


def test_kinetic_levels():
    ep = effective_params(TrapConfig.trap_units(0.5), NCParams(0.0, 0.0))
    kl = kinetic_levels(ep, 2)
    assert kl.energies == [0.25, 0.75, 1.25] and not kl.flat
    ep = effective_params(TrapConfig.trap_units(Fraction(1, 2)), NCParams(Fraction(1, 10), Fraction(1, 25)))
    kl = kinetic_levels(ep, 3)
    assert kl.energies[0] == Fraction(199, 616)
    assert {b - a for a, b in zip(kl.energies, kl.energies[1:])} == {Fraction(199, 308)}
    assert kl.energies[0] == reduced_system(ep).E_k0
    flat = kinetic_levels(effective_params(TrapConfig.trap_units(0.0), NCParams(0.0, 0.0)), 2)
    assert flat.flat and flat.energies == [0.0, 0.0, 0.0]
    with pytest.raises(DomainError):
        kinetic_levels(ep, -1)


def test_reduced_spectrum_commutative():
    ep = effective_params(TrapConfig.trap_units(Fraction(1, 2)), NCParams(Fraction(0), Fraction(0)))
    rs = reduced_system(ep)
    assert rs.omega_star == 2 and rs.mu_star == Fraction(1, 8)
    assert reduced_spectrum(ep, 2) == [Fraction(5, 4), Fraction(13, 4), Fraction(21, 4)]


def test_reduced_spectrum_deformed(trap_exact, nc_exact):
    ep = effective_params(trap_exact, nc_exact)
    rs = reduced_system(ep)
    assert rs.omega_star == Fraction(3992004, 2589587)
    assert rs.mu_star == Fraction(6699261569, 32819262885)
    assert rs.mu_star * rs.omega_star ** 2 == ep.K / 2
    assert rs.mu_star * rs.omega_star == ep.G / 2
    assert rs.E_k0 == rs.omega_0 / 2
    levels = reduced_spectrum(ep, 1)
    assert float(levels[0]) == pytest.approx(1.0938319990793899, rel=1e-15)
    assert levels[1] - levels[0] == rs.omega_star


def test_reduced_undefined_for_zero_G():
    ep = effective_params(TrapConfig.trap_units(0.0), NCParams(0.0, 0.0))
    with pytest.raises(UndefinedReductionError):
        reduced_system(ep)
    with pytest.raises(UndefinedReductionError):
        reduced_spectrum(ep, 3)
    with pytest.raises(UndefinedReductionError):
        jz_star_signal(ep, NCParams(0.0, 0.0))


def test_jz_star_commutative():
    ep = effective_params(TrapConfig.trap_units(0.5), NCParams(0.0, 0.0))
    sig, levels = jz_star_signal(ep, NCParams(0.0, 0.0), 3)
    assert sig.dev == 0 and sig.J0_hbar == 0.5 and sig.interval_hbar == 1
    assert levels == [0.5, 1.5, 2.5, 3.5]


def test_jz_star_deformed(trap_exact, nc_exact):
    ep = effective_params(trap_exact, nc_exact)
    sig, levels = jz_star_signal(ep, nc_exact, 2)
    assert sig.theta_term == Fraction(2587, 164425)
    assert sig.eta_term == Fraction(6577, 103480)
    assert sig.dev == DEV_EX
    assert float(sig.dev) == pytest.approx(0.079212580063462, rel=1e-14)
    assert sig.delta_J0_hbar == DEV_EX / 2
    assert levels == [(1 - DEV_EX) * (n + Fraction(1, 2)) for n in range(3)]


def test_tilde_limit_example():
    trap = TrapConfig.trap_units(Fraction(0))
    tp = tilde_limit(trap, NCParams(Fraction(1, 10), Fraction(1, 25)))
    assert tp.G_tilde == Fraction(7, 50) and tp.K_tilde == 1
    assert tp.M_tilde == 1 and tp.Omega_tilde == 1
    rs = reduced_system(tp.as_effective())
    assert rs.omega_star == Fraction(50, 7)
    assert rs.mu_star == Fraction(49, 5000)
    tp2 = tilde_limit(trap, NCParams(Fraction(1, 5), Fraction(2, 25)))
    assert tp2.G_tilde == Fraction(7, 25)
    assert jz_tilde_signal(trap, NCParams(Fraction(1, 5), Fraction(2, 25))).dev == Fraction(2, 7)


def test_tilde_guards():
    with pytest.raises(DomainError):
        tilde_limit(TrapConfig.trap_units(0.5), NCParams(0.1, 0.04))
    assert tilde_limit(TrapConfig.trap_units(0.5), NCParams(0.1, 0.04), formal=True).G_tilde > 0
    with pytest.raises(UndefinedReductionError):
        tilde_limit(TrapConfig.trap_units(0.0), NCParams(0.0, 0.0))
    with pytest.raises(UndefinedReductionError):
        jz_tilde_signal(TrapConfig.trap_units(0.0), NCParams(0.0, 0.0))


def test_jz_tilde_example_exact():
    sig = jz_tilde_signal(TrapConfig.trap_units(Fraction(0)), NCParams(Fraction(1, 10), Fraction(1, 25)))
    assert sig.dev == sig.dev_alt == Fraction(2, 7)
    assert sig.J0_hbar == Fraction(1, 2) * Fraction(5, 7)
    assert sig.interval_hbar == Fraction(5, 7)


def test_jz_tilde_eta_to_zero():
    trap = TrapConfig.trap_units(0.0)
    devs = [jz_tilde_signal(trap, NCParams(0.1, e)).dev for e in (1e-2, 1e-4, 1e-8)]
    assert devs[0] > devs[1] > devs[2] > 0
    assert jz_tilde_signal(trap, NCParams(0.1, 0.0)).J0_hbar == 0.5


def test_jz_tilde_paths_inconsistent_raise(monkeypatch):
    from nctrap import spectra

    monkeypatch.setattr(spectra, "_dev_tilde_c_form", lambda *a: 0.5)
    with pytest.raises(ConsistencyError):
        spectra.jz_tilde_signal(TrapConfig.trap_units(0.0), NCParams(0.1, 0.04))


@settings(max_examples=100)
@given(st.fractions(Fraction(1, 100), 100, max_denominator=1000),
       st.fractions(Fraction(1, 10), 10, max_denominator=100))
def test_dev_tilde_paths_exact(c_sq, mu_w):
    trap = TrapConfig(mass=mu_w, charge=Fraction(1), B=Fraction(0), omega_rho=Fraction(1))
    theta = Fraction(1, 10)
    sig = jz_tilde_signal(trap, NCParams(theta, theta / c_sq))
    assert sig.dev == sig.dev_alt == 1 / (1 + c_sq * mu_w ** 2)
    assert 0 < sig.dev < 1


def test_dev_tilde_monotone():
    trap = TrapConfig.trap_units(0.0)
    devs = [jz_tilde_signal(trap, NCParams(0.1, 0.1 / c)).dev for c in (0.01, 0.1, 1, 10, 100)]
    assert all(a > b for a, b in zip(devs, devs[1:]))
    devs = [jz_tilde_signal(TrapConfig(mass=1.0, charge=1.0, B=0.0, omega_rho=w),
                            NCParams(0.1, 0.04)).dev for w in (0.5, 1, 2, 4)]
    assert all(a > b for a, b in zip(devs, devs[1:]))


def test_first_order_consistency():
    """dev_star/dev_tilde -> 1 as (θ, η) = t(θ₀, η₀) -> 0 at B = 0.

    The ratio is 1 + O(θη), so the error falls as t².
    """
    trap = TrapConfig.trap_units(0.0)
    errs = []
    for t in (1e-1, 1e-2, 1e-3, 1e-4):
        nc = NCParams(0.1 * t, 0.04 * t)
        ep = effective_params(trap, nc)
        sig, _ = jz_star_signal(ep, nc)
        errs.append(abs(sig.dev / jz_tilde_signal(trap, nc).dev - 1))
    slopes = [math.log10(a / b) for a, b in zip(errs, errs[1:])]
    assert errs[-1] < 1e-9
    assert all(1.9 < s < 2.1 for s in slopes)


def test_chiral_frequencies():
    ep = effective_params(TrapConfig.trap_units(0.5), NCParams(0.0, 0.0))
    w = chiral_frequencies(ep)
    assert w.omega_plus == pytest.approx(1.2807764064044151, rel=1e-15)
    assert w.omega_minus == pytest.approx(0.7807764064044151, rel=1e-15)
    assert w.stable
    w0 = chiral_frequencies(effective_params(TrapConfig.trap_units(0.0), NCParams(0.0, 0.0)))
    assert w0.omega_plus == w0.omega_minus == 1.0
    wd = chiral_frequencies(effective_params(TrapConfig.trap_units(0.5), NCParams(0.1, 0.04)))
    assert wd.omega_plus == pytest.approx(1.3720374337266252, rel=1e-14)
    assert wd.omega_minus == pytest.approx(0.7259335376227292, rel=1e-14)


def test_chiral_levels_isotropic_degeneracy():
    ep = effective_params(TrapConfig.trap_units(0.0), NCParams(0.0, 0.0))
    levels = chiral_levels(ep, 21)
    expected = sorted(k + 1.0 for k in range(6) for _ in range(k + 1))
    assert levels == pytest.approx(expected)


def test_commutative_regression_random():
    rng = random.Random(1234)
    for _ in range(2000):
        mu, wr, B, q = (rng.uniform(0.1, 10) for _ in range(4))
        trap = TrapConfig(mass=mu, charge=q, B=B, omega_rho=wr)
        nc = NCParams(0.0, 0.0)
        ep = effective_params(trap, nc)
        assert ep.M == pytest.approx(mu, rel=1e-14)
        assert ep.G == pytest.approx(mu * trap.omega_c, rel=1e-14)
        assert ep.K == pytest.approx(trap.kappa, rel=1e-14)
        assert jz_star_signal(ep, nc)[0].J0_hbar == 0.5
