"""Closed-form spectra of the deformed planar trap Hamiltonian.

Expressed in canonical variables the deformed Hamiltonian is

    Ĥ₂ = (p_i + G ε_ij x_j / 2)² / 2M + K x_i x_i / 2

with effective parameters (M, G, Ω_P, K) evaluated here to all orders in
θ and η. Deviations from the commutative values (M - μ, G - μω_c, K - κ)
and the angular-momentum deviations are computed from rearranged
expressions that never subtract nearly equal totals.

The first-order B → 0 formulas (the "tilde" quantities) form a separate
path, so that truncation error can be measured rather than hidden.
"""

from dataclasses import dataclass
from typing import NamedTuple

from . import _numeric
from .errors import ConsistencyError, DomainError, UndefinedReductionError


@dataclass(frozen=True)
class EffectiveParams:
    """Effective mass, coupling, frequency and stiffness of Ĥ₂.

    ``MOmega_P_sq`` is M·Ω_P² (kept as a product so it is exact in rational
    mode). ``mu``, ``omega_c`` and ``kappa`` are the commutative reference
    values the deviation fields are measured against.
    """

    M: object
    G: object
    MOmega_P_sq: object
    K: object
    hbar: object
    c1: object = None
    c2: object = None
    dM: object = None
    dG: object = None
    dK: object = None
    mu: object = None
    omega_c: object = None
    kappa: object = None
    xi_sq: object = 1

    @property
    def Omega_P_sq(self):
        return self.MOmega_P_sq / self.M

    @property
    def Omega_P(self):
        return _numeric.sqrt(self.Omega_P_sq)

    @property
    def omega_0(self):
        return self.G / self.M


def effective_params(trap, nc):
    """Evaluate M, G, MΩ_P², K, c₁, c₂ for ``trap`` deformed by ``nc``.

    Uses

        1/2M   = ξ² (c₁²/2μ + κθ²/8ħ²)
        G/2M   = ξ² (c₁c₂/μ + κθ/2ħ)
        MΩ_P²  = ξ² (c₂²/μ + κ)
        K      = MΩ_P² - G²/4M  =  κ (M/μ) ((1 - u)/(1 + u))²

    with c₁ = 1 + μω_cθ/4ħ, c₂ = μω_c/2 + η/2ħ and u = θη/4ħ². The last form
    of K follows from the first three and avoids the subtraction.
    """
    hbar = nc.hbar
    mu, kappa, wc = trap.mass, trap.kappa, trap.omega_c
    theta, eta = nc.theta, nc.eta
    u = nc.u
    xi_sq = 1 / (1 + u)

    t = mu * wc * theta / (4 * hbar)
    c1 = 1 + t
    c2 = mu * wc / 2 + eta / (2 * hbar)

    # μ/M = 1 + D
    D = (t * (2 + t) - u + mu * kappa * theta ** 2 / (4 * hbar ** 2)) / (1 + u)
    M = mu / (1 + D)
    dM = -mu * D / (1 + D)

    # 2ξ²(c₁c₂ + μκθ/2ħ) - μω_c; the μω_c·u pieces cancel identically
    g_dev = (eta / hbar + t * mu * wc + mu * kappa * theta / hbar) / (1 + u)
    ratio = M / mu
    G = ratio * (mu * wc + g_dev)
    dG = ratio * g_dev + wc * dM

    MOmega_P_sq = xi_sq * (c2 ** 2 / mu + kappa)
    K = kappa * ratio * ((1 - u) / (1 + u)) ** 2
    dK = -kappa * (4 * u / (1 + u) ** 2 + D) / (1 + D)

    return EffectiveParams(M=M, G=G, MOmega_P_sq=MOmega_P_sq, K=K, hbar=hbar,
                           c1=c1, c2=c2, dM=dM, dG=dG, dK=dK, mu=mu,
                           omega_c=wc, kappa=kappa, xi_sq=xi_sq)


class KineticLevels(NamedTuple):
    energies: list
    flat: bool


def kinetic_levels(ep, n_max):
    """Levels ħω₀(n + 1/2), ω₀ = G/M, of the mechanical kinetic energy.

    With G = 0 there is no oscillator (free kinetic continuum): all entries
    are zero and ``flat`` is set.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    w0 = ep.G / ep.M
    flat = ep.G == 0
    return KineticLevels([ep.hbar * w0 * (n + 1 / _two(w0)) for n in range(n_max + 1)],
                         flat)


def _two(x):
    # 2 in the backend of x, so Fraction inputs keep n + 1/2 exact
    return x * 0 + 2


@dataclass(frozen=True)
class ReducedSystem:
    """One-degree-of-freedom system left in the lowest kinetic level."""

    mu_star: object
    omega_star: object
    E_k0: object
    omega_0: object
    hbar: object

    def level(self, n):
        return self.hbar * self.omega_star * (n + 1 / _two(self.omega_star)) + self.E_k0


def reduced_system(ep):
    if ep.G == 0:
        raise UndefinedReductionError(
            "G = 0: the reduced frequency K/G and its ladder operator are "
            "undefined (commutative system with vanishing field)"
        )
    if not (ep.G > 0 and ep.K > 0):
        raise DomainError("reduced system needs G > 0 and K > 0")
    return ReducedSystem(mu_star=ep.G ** 2 / (2 * ep.K), omega_star=ep.K / ep.G,
                         E_k0=ep.hbar * ep.G / (2 * ep.M), omega_0=ep.G / ep.M,
                         hbar=ep.hbar)


def reduced_spectrum(ep, n_max):
    """ħω*(n + 1/2) + E_k0 for n = 0..n_max, with ω* = K/G."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    rs = reduced_system(ep)
    return [rs.level(n) for n in range(n_max + 1)]


@dataclass(frozen=True)
class AngularSignal:
    """Deviation of the angular-momentum level factor from 1.

    All derived values are in units of ħ. ``kind`` is ``"star"`` for the
    full kinetic-ground result and ``"tilde"`` for the first-order B → 0
    limit. For ``"star"``, dev = ξ² (theta_term + eta_term) with
    theta_term = Gθ/4ħ and eta_term = η/Għ. For ``"tilde"``, dev = eta_term
    = η/G̃ħ and ``dev_alt`` is the same quantity via 1/(1 + c²μ²ω_ρ²).
    """

    kind: str
    dev: object
    theta_term: object
    eta_term: object
    dev_alt: object = None

    @property
    def J0_hbar(self):
        return (1 - self.dev) / 2

    @property
    def interval_hbar(self):
        return 1 - self.dev

    @property
    def delta_J0_hbar(self):
        """Drop of the lowest level below the commutative ħ/2."""
        return self.dev / 2

    def levels_hbar(self, n_max):
        half = 1 / _two(self.dev)
        return [(1 - self.dev) * (n + half) for n in range(n_max + 1)]


def jz_star_signal(ep, nc, n_max=0):
    """Chern-Simons level factor in the kinetic-ground limit.

    Returns ``(signal, levels)`` where levels are (1 - dev)(n + 1/2) in ħ.
    """
    if ep.G == 0:
        raise UndefinedReductionError("G = 0: eta/(G hbar) is undefined")
    theta_term = ep.G * nc.theta / (4 * nc.hbar)
    eta_term = nc.eta / (ep.G * nc.hbar)
    sig = AngularSignal(kind="star", dev=nc.xi_sq * (theta_term + eta_term),
                        theta_term=theta_term, eta_term=eta_term)
    return sig, sig.levels_hbar(n_max)


@dataclass(frozen=True)
class TildeParams:
    """First-order (ξ = 1) effective parameters in the limit B → 0."""

    M_tilde: object
    G_tilde: object
    Omega_tilde: object
    K_tilde: object
    hbar: object
    first_order: bool = True

    def as_effective(self):
        """EffectiveParams view so reduced_spectrum gives μ̃, ω̃ = K̃/G̃."""
        return EffectiveParams(M=self.M_tilde, G=self.G_tilde,
                               MOmega_P_sq=self.M_tilde * self.Omega_tilde ** 2,
                               K=self.K_tilde, hbar=self.hbar)


def tilde_limit(trap, nc, formal=False):
    """G̃ = (μ²ω_ρ²θ + η)/ħ, M̃ = μ, Ω̃ = ω_ρ, K̃ = μω_ρ².

    The trap must have B = 0 unless ``formal`` is set.
    """
    if trap.B != 0 and not formal:
        raise DomainError("tilde limit needs B = 0 (pass formal=True to override)")
    if nc.is_commutative:
        raise UndefinedReductionError(
            "theta = eta = 0 with B = 0 gives G~ = 0: the effective frequency "
            "and annihilation operator cannot be defined"
        )
    mu, w = trap.mass, trap.omega_rho
    return TildeParams(M_tilde=mu,
                       G_tilde=(mu ** 2 * w ** 2 * nc.theta + nc.eta) / nc.hbar,
                       Omega_tilde=w, K_tilde=mu * w ** 2, hbar=nc.hbar)


def _dev_tilde_c_form(mu_w_sq, theta, eta):
    # 1/(1 + c²μ²ω²) with c² = θ/η; c → ∞ at η = 0, c = 0 at θ = 0
    if eta == 0:
        return eta * 0
    c_sq = theta / eta
    return 1 / (1 + c_sq * mu_w_sq)


def jz_tilde_signal(trap, nc, rtol=1e-12):
    """First-order B → 0 level factor, computed two ways and cross-checked."""
    if nc.is_commutative:
        raise UndefinedReductionError("theta = eta = 0: G~ = 0, signal undefined")
    mu_w_sq = (trap.mass * trap.omega_rho) ** 2
    g_hbar = mu_w_sq * nc.theta + nc.eta
    dev = nc.eta / g_hbar
    dev_alt = _dev_tilde_c_form(mu_w_sq, nc.theta, nc.eta)
    if _numeric.is_exact(dev) and _numeric.is_exact(dev_alt):
        agree = dev == dev_alt
    else:
        agree = abs(dev - dev_alt) <= rtol * max(abs(dev), abs(dev_alt)) or dev == dev_alt
    if not agree:
        raise ConsistencyError(f"dev_tilde paths disagree: {dev} vs {dev_alt}")
    return AngularSignal(kind="tilde", dev=dev, theta_term=None, eta_term=dev,
                         dev_alt=dev_alt)


class ChiralFrequencies(NamedTuple):
    """Normal-mode frequencies of Ĥ₂; ``stable`` is False if ω₋ <= 0."""

    omega_plus: object
    omega_minus: object

    @property
    def stable(self):
        return self.omega_minus > 0


def chiral_frequencies(ep):
    """ω± = Ω_P ± G/2M with Ω_P = sqrt(K/M + G²/4M²).

    Ĥ₂ is an isotropic oscillator at (M, Ω_P) shifted by -(G/2M) J_z, so its
    spectrum is ħω₊(n₊ + 1/2) + ħω₋(n₋ + 1/2).
    """
    if not ep.M > 0:
        raise DomainError("M must be positive")
    half_w0 = ep.G / (2 * ep.M)
    omega_P = _numeric.sqrt(ep.K / ep.M + half_w0 ** 2)
    return ChiralFrequencies(omega_P + half_w0, omega_P - half_w0)


def chiral_levels(ep, n_levels):
    """Lowest ``n_levels`` energies of Ĥ₂ from the chiral closed form."""
    wp, wm = (float(w) for w in chiral_frequencies(ep))
    if wm <= 0:
        raise DomainError("omega_minus <= 0: spectrum unbounded below")
    hbar = float(ep.hbar)
    # a level with n± >= n_levels already has n_levels levels below it
    levels = sorted(hbar * (wp * (a + 0.5) + wm * (b + 0.5))
                    for a in range(n_levels) for b in range(n_levels))
    return levels[:n_levels]
