"""Truncated Fock-space oracle for the deformed planar trap.

Canonical operators are built from single-mode ladder matrices,

    x = sqrt(ħ/2mw) (a + a†),   p = i sqrt(ħmw/2) (a† - a),

and combined over the two planar modes with Kronecker products. Deformed
operators are exact linear combinations of these. Every quadratic form is
assembled from single-mode products, which reproduces the dense matrix
product exactly but costs O(dim²) instead of O(dim³).

Identities are only checked on the interior block (both mode quantum
numbers below ``n_per_mode - 2``). Ladder truncation corrupts the top rows
and columns, so comparisons there are meaningless.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from . import spectra
from .algebra import bopp_map
from .errors import ConsistencyError, DimensionCapError, DomainError, InsufficientTruncationError

DEFAULT_MAX_DIM = 4096

# variable order shared with BoppMap: (x1, x2, p1, p2)
_MODE = (0, 1, 0, 1)
_IS_MOMENTUM = (False, False, True, True)


@dataclass(frozen=True)
class FockBasisSpec:
    """Truncation and reference oscillator of the two-mode Fock basis."""

    n_per_mode: int
    m_ref: float = 1.0
    w_ref: float = 1.0
    hbar: float = 1.0
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        if int(self.n_per_mode) != self.n_per_mode or self.n_per_mode < 4:
            raise DomainError("n_per_mode must be an integer >= 4")
        if not (self.m_ref > 0 and self.w_ref > 0 and self.hbar > 0):
            raise DomainError("m_ref, w_ref and hbar must be positive")
        if self.dim > self.max_dim:
            raise DimensionCapError(
                f"dimension {self.dim} exceeds cap {self.max_dim}"
            )

    @property
    def dim(self):
        return self.n_per_mode ** 2

    @classmethod
    def for_params(cls, ep, n_per_mode, max_dim=DEFAULT_MAX_DIM):
        """Reference oscillator (M, Ω_P): matched to Ĥ₂'s own quadratic form."""
        return cls(n_per_mode=n_per_mode, m_ref=float(ep.M),
                   w_ref=float(ep.Omega_P), hbar=float(ep.hbar), max_dim=max_dim)

    @classmethod
    def band_adapted(cls, ep, n_per_mode, max_dim=DEFAULT_MAX_DIM):
        """Reference oscillator (M/2, G/M), so that m_ref·w_ref = G/2.

        In this basis the mechanical momenta p_i ± (G/2) x_j are pure
        ladder combinations of the two modes and the lowest kinetic band is
        spanned exactly by truncated basis states.
        """
        if not ep.G > 0:
            raise DomainError("band-adapted basis needs G > 0")
        return cls(n_per_mode=n_per_mode, m_ref=float(ep.M) / 2,
                   w_ref=float(ep.G / ep.M), hbar=float(ep.hbar), max_dim=max_dim)


def ladder_matrices(n, m, w, hbar=1.0):
    """Single-mode (x, p) truncated to ``n`` levels."""
    a = np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1)
    x = math.sqrt(hbar / (2 * m * w)) * (a + a.T)
    p = 1j * math.sqrt(hbar * m * w / 2) * (a.T - a)
    return x.astype(complex), p


@dataclass(frozen=True, eq=False)
class FockOperatorSet:
    """Canonical and deformed operators on the truncated two-mode basis.

    ``bopp`` holds the numeric Bopp-shift coefficients: row k expresses
    the k-th deformed variable in the canonical ones.
    """

    basis: FockBasisSpec
    x: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    bopp: np.ndarray = field(repr=False)
    interior: np.ndarray = field(repr=False)

    @property
    def n(self):
        return self.basis.n_per_mode

    @property
    def dim(self):
        return self.basis.dim

    @property
    def hbar(self):
        return self.basis.hbar

    def _single(self, k):
        return self.p if _IS_MOMENTUM[k] else self.x

    def canonical(self, k):
        eye = np.eye(self.n)
        s = self._single(k)
        return np.kron(s, eye) if _MODE[k] == 0 else np.kron(eye, s)

    @property
    def x1(self):
        return self.canonical(0)

    @property
    def x2(self):
        return self.canonical(1)

    @property
    def p1(self):
        return self.canonical(2)

    @property
    def p2(self):
        return self.canonical(3)

    def linear(self, coeffs):
        """Σ_k c_k V_k with V = (x1, x2, p1, p2)."""
        out = np.zeros((self.dim, self.dim), complex)
        for k, c in enumerate(coeffs):
            if c != 0:
                out += c * self.canonical(k)
        return out

    def deformed(self, k):
        """x̂1, x̂2, p̂1, p̂2 for k = 0..3."""
        return self.linear(self.bopp[k])

    def _pair(self, k, l):
        # V_k V_l via single-mode products
        sk, sl = self._single(k), self._single(l)
        eye = np.eye(self.n)
        if _MODE[k] == _MODE[l]:
            prod = sk @ sl
            return np.kron(prod, eye) if _MODE[k] == 0 else np.kron(eye, prod)
        if _MODE[k] == 0:
            return np.kron(sk, sl)
        return np.kron(sl, sk)

    def quadratic(self, Q):
        """Σ_kl Q_kl V_k V_l for a 4×4 coefficient array Q."""
        Q = np.asarray(Q)
        out = np.zeros((self.dim, self.dim), complex)
        for k in range(4):
            for l in range(4):
                if Q[k, l] != 0:
                    out += Q[k, l] * self._pair(k, l)
        return out

    def commutator(self, a, b):
        """[A, B] for A = Σ a_k V_k, B = Σ b_l V_l."""
        a, b = np.asarray(a), np.asarray(b)
        return self.quadratic(np.outer(a, b) - np.outer(b, a))

    def project(self, A):
        """Interior block of a dim×dim matrix."""
        return A[np.ix_(self.interior, self.interior)]


def interior_indices(n, margin=2):
    return np.array([i * n + j for i in range(n - margin) for j in range(n - margin)])


def build_operators(basis, nc):
    """Canonical ladder matrices at (m_ref, w_ref) and the Bopp coefficients."""
    x, p = ladder_matrices(basis.n_per_mode, basis.m_ref, basis.w_ref, basis.hbar)
    return FockOperatorSet(basis=basis, x=x, p=p, bopp=bopp_map(nc).matrix,
                           interior=interior_indices(basis.n_per_mode))


def hermitize(A):
    return (A + A.conj().T) / 2


def max_norm(A):
    return float(np.max(np.abs(A))) if A.size else 0.0


def commutator_residuals(ops, nc):
    """Interior max-norm residuals of the canonical and deformed algebra."""
    hbar = ops.hbar
    xi_sq = float(nc.xi_sq)
    eye = np.eye(len(ops.interior))
    E = np.eye(4)
    out = {}
    canon = 0.0
    for i in range(2):
        for j in range(2):
            target = 1j * hbar * (i == j)
            canon = max(canon, max_norm(ops.project(ops.commutator(E[i], E[2 + j])) - target * eye))
    out["canonical_xp"] = canon
    out["canonical_xx"] = max_norm(ops.project(ops.commutator(E[0], E[1])))
    out["canonical_pp"] = max_norm(ops.project(ops.commutator(E[2], E[3])))
    B = ops.bopp
    out["xx"] = max_norm(ops.project(ops.commutator(B[0], B[1]))
                         - 1j * xi_sq * float(nc.theta) * eye)
    out["pp"] = max_norm(ops.project(ops.commutator(B[2], B[3]))
                         - 1j * xi_sq * float(nc.eta) * eye)
    xp = 0.0
    for i in range(2):
        for j in range(2):
            target = 1j * hbar * (i == j)
            xp = max(xp, max_norm(ops.project(ops.commutator(B[i], B[2 + j])) - target * eye))
    out["xp"] = xp
    return out


def _h2_deformed_form(ops, trap):
    # P̂²/2μ + (ω_c/2)(p̂1 x̂2 - p̂2 x̂1) + μ(ω_ρ² + ω_c²/4) X̂²/2
    B = ops.bopp
    mu, wc = float(trap.mass), float(trap.omega_c)
    kin = 1 / (2 * mu)
    pot = mu * float(trap.omega_P_sq) / 2
    Q = (kin * (np.outer(B[2], B[2]) + np.outer(B[3], B[3]))
         + wc / 2 * (np.outer(B[2], B[1]) - np.outer(B[3], B[0]))
         + pot * (np.outer(B[0], B[0]) + np.outer(B[1], B[1])))
    return ops.quadratic(Q)


def h2_canonical_coefficients(ep):
    """4×4 coefficients of p²/2M + (G/2M)(p1x2 - p2x1) + MΩ_P² x²/2."""
    M, G, MO = float(ep.M), float(ep.G), float(ep.MOmega_P_sq)
    Q = np.zeros((4, 4))
    Q[0, 0] = Q[1, 1] = MO / 2
    Q[2, 2] = Q[3, 3] = 1 / (2 * M)
    Q[2, 1] = G / (2 * M)
    Q[3, 0] = -G / (2 * M)
    return Q


def build_h2_hat(ops, trap, nc, tol=1e-10, ep=None):
    """Ĥ₂ from effective parameters, cross-checked against the deformed form.

    Form (a) substitutes the deformed operators into the trap Hamiltonian;
    form (b) uses (M, G, MΩ_P²) on canonical operators. Raises
    ConsistencyError if their interior blocks differ by more than ``tol``.
    """
    if ep is None:
        ep = spectra.effective_params(trap, nc)
    h_a = hermitize(_h2_deformed_form(ops, trap))
    h_b = hermitize(ops.quadratic(h2_canonical_coefficients(ep)))
    gap = max_norm(ops.project(h_a - h_b))
    if gap > tol:
        raise ConsistencyError(f"dual construction of H2 disagrees by {gap:.3e}")
    return h_b


def jz_coefficients(nc):
    """ε_ij x_i p_j - (ξ²/2ħ)(θ p·p + η x·x) as 4×4 coefficients."""
    c = float(nc.xi_sq) / (2 * float(nc.hbar))
    Q = np.zeros((4, 4))
    Q[0, 3] = 1.0
    Q[1, 2] = -1.0
    Q[0, 0] = Q[1, 1] = -c * float(nc.eta)
    Q[2, 2] = Q[3, 3] = -c * float(nc.theta)
    return Q


def build_jz_hat(ops, nc):
    return hermitize(ops.quadratic(jz_coefficients(nc)))


def lowest_eigenvalues(H, k):
    k = min(k, H.shape[0])
    return sla.eigh(H, eigvals_only=True, subset_by_index=[0, k - 1])


def commutator_h2_jz(ops, h2, jz):
    """Interior max-norm of [Ĥ₂, Ĵ_z]."""
    comm = h2 @ jz - jz @ h2
    return max_norm(ops.project(comm))


def model_commutator_h2_jz(ops, ep, nc):
    """Closed form of [Ĥ₂, Ĵ_z] on the canonical operators.

    Only the isotropic pieces of Ĥ₂ and Ĵ_z fail to commute:

        [Ĥ₂, Ĵ_z] = -(ξ²/2ħ)(θMΩ_P²/2 - η/2M) [x², p²],

    which vanishes only when η = θ M² Ω_P².
    """
    xi_sq, hbar = float(nc.xi_sq), float(nc.hbar)
    coeff = -xi_sq / (2 * hbar) * (float(nc.theta) * float(ep.MOmega_P_sq) / 2
                                  - float(nc.eta) / (2 * float(ep.M)))
    x_sq = ops.quadratic(np.diag([1.0, 1.0, 0, 0]))
    p_sq = ops.quadratic(np.diag([0, 0, 1.0, 1.0]))
    return coeff * (x_sq @ p_sq - p_sq @ x_sq)


def joint_eigen_residuals(ops, h2, jz, k):
    """For the lowest ``k`` eigenvectors v of Ĥ₂: ‖Ĵ_z v - ⟨Ĵ_z⟩ v‖ on the interior.

    Zero exactly when each v is also a Ĵ_z eigenvector.
    """
    _, vecs = sla.eigh(h2, subset_by_index=[0, k - 1])
    out = []
    for v in vecs.T:
        jv = jz @ v
        mean = np.vdot(v, jv).real
        out.append(float(np.linalg.norm((jv - mean * v)[ops.interior])))
    return out


@dataclass
class SpectrumCheck:
    eigenvalues: list
    closed_form: list
    abs_errors: list

    @property
    def max_error(self):
        return max(self.abs_errors, default=0.0)


def spectrum_check(trap, nc, n_per_mode=40, n_levels=10, basis=None, tol=1e-10):
    """Lowest eigenvalues of the dual-constructed Ĥ₂ against the chiral form."""
    ep = spectra.effective_params(trap, nc)
    if basis is None:
        basis = FockBasisSpec.for_params(ep, n_per_mode)
    ops = build_operators(basis, nc)
    h2 = build_h2_hat(ops, trap, nc, tol=tol, ep=ep)
    ev = lowest_eigenvalues(h2, n_levels)
    cf = spectra.chiral_levels(ep, n_levels)
    return SpectrumCheck(eigenvalues=[float(e) for e in ev], closed_form=cf,
                         abs_errors=[abs(float(a) - b) for a, b in zip(ev, cf)])


@dataclass
class ReducedLimitReport:
    """Lowest-kinetic-band spectra from the oracle against closed forms."""

    n_band: int
    jz_levels: list
    h2_levels: list
    jz_spacing_expected: float
    h2_spacing_expected: float
    jz_spacing_error: float
    h2_spacing_error: float
    tol: float

    @property
    def passed(self):
        return self.jz_spacing_error <= self.tol and self.h2_spacing_error <= self.tol


def kinetic_band_states(ops, ep, band_tol=1e-9, n_states=None):
    """Orthonormal basis of the numerically resolved lowest kinetic band.

    Returns the right singular vectors of (Ĥ_k - ħω₀/2) restricted to
    interior columns, for singular values below ``band_tol·ħω₀``. Here
    Ĥ_k = (K₁² + K₂²)/2M with mechanical momenta K₁ = p₁ + (G/2)x₂ and
    K₂ = p₂ - (G/2)x₁. With ``n_states`` the smallest that many are taken
    regardless of tolerance.
    """
    G, M = float(ep.G), float(ep.M)
    hbar = ops.hbar
    k1 = np.array([0, G / 2, 1.0, 0])
    k2 = np.array([-G / 2, 0, 0, 1.0])
    hk = hermitize(ops.quadratic((np.outer(k1, k1) + np.outer(k2, k2)) / (2 * M)))
    w0 = G / M
    A = (hk - hbar * w0 / 2 * np.eye(ops.dim))[:, ops.interior]
    _, s, vh = sla.svd(A, full_matrices=False)
    order = np.argsort(s)
    if n_states is None:
        sel = order[s[order] <= band_tol * hbar * w0]
    else:
        sel = order[:n_states]
    V = np.zeros((ops.dim, len(sel)), complex)
    V[ops.interior] = vh[sel].conj().T
    return V


def verify_reduced_limit(trap, nc, basis=None, n_per_mode=30, tol=1e-6,
                         band_tol=1e-9, n_check=3, n_states=None):
    """Check the reduced-system spacings on lowest-kinetic-band states.

    Within the band, Ĵ_z should have levels spaced by ħ(1 - dev_star) and
    Ĥ₂ levels spaced by ħω* = ħK/G. The Ĵ_z projection is diagonalized and
    Ĥ₂ is read off in the same eigenbasis; the first ``n_check`` spacings
    are compared. The default basis is the band-adapted one.
    """
    ep = spectra.effective_params(trap, nc)
    if not ep.G > 0:
        spectra.reduced_system(ep)  # raises the typed error for G = 0
    if basis is None:
        basis = FockBasisSpec.band_adapted(ep, n_per_mode)
    ops = build_operators(basis, nc)
    V = kinetic_band_states(ops, ep, band_tol=band_tol, n_states=n_states)
    if V.shape[1] < n_check + 1 or V.shape[1] < 3:
        raise InsufficientTruncationError(
            f"only {V.shape[1]} kinetic-band states resolved at n_per_mode="
            f"{basis.n_per_mode}", suggested_n=int(math.ceil(basis.n_per_mode * 1.5)))
    jz = build_jz_hat(ops, nc)
    h2 = ops.quadratic(h2_canonical_coefficients(ep))
    jb = hermitize(V.conj().T @ jz @ V)
    j_vals, U = np.linalg.eigh(jb)
    W = V @ U
    h_vals = np.real(np.einsum("ij,ij->j", W.conj(), h2 @ W))

    sig, _ = spectra.jz_star_signal(ep, nc)
    hbar = float(ep.hbar)
    jz_exp = hbar * float(sig.interval_hbar)
    h_exp = hbar * float(ep.K / ep.G)
    j_err = float(np.max(np.abs(np.diff(j_vals[:n_check + 1]) - jz_exp)))
    h_err = float(np.max(np.abs(np.diff(h_vals[:n_check + 1]) - h_exp)))
    return ReducedLimitReport(n_band=V.shape[1], jz_levels=[float(v) for v in j_vals],
                              h2_levels=[float(v) for v in h_vals],
                              jz_spacing_expected=jz_exp, h2_spacing_expected=h_exp,
                              jz_spacing_error=j_err, h2_spacing_error=h_err, tol=tol)


DEFAULT_TOLERANCES = {
    "commutator": 1e-10,
    "dual": 1e-10,
    "spectrum": 1e-8,
    "h2_jz": 1e-10,
    "joint": 1e-8,
    "convergence": 1e-8,
}


def run_oracle(trap, nc, n_per_mode=30, n_levels=10, tolerances=None, basis=None):
    """Full oracle pass; returns a plain report dict.

    ``checks`` maps each named check to pass/fail. ``converged`` compares
    the lowest eigenvalues against a run with ``n_per_mode - 5`` and is
    False (with a null drift) when that coarser basis would be below 4.
    """
    tols = dict(DEFAULT_TOLERANCES)
    tols.update(tolerances or {})
    ep = spectra.effective_params(trap, nc)
    if basis is None:
        basis = FockBasisSpec.for_params(ep, n_per_mode)
    ops = build_operators(basis, nc)

    residuals = commutator_residuals(ops, nc)
    h_a = hermitize(_h2_deformed_form(ops, trap))
    h2 = hermitize(ops.quadratic(h2_canonical_coefficients(ep)))
    residuals["dual"] = max_norm(ops.project(h_a - h2))
    jz = build_jz_hat(ops, nc)
    residuals["h2_jz"] = commutator_h2_jz(ops, h2, jz)
    model = model_commutator_h2_jz(ops, ep, nc)
    residuals["h2_jz_model"] = max_norm(ops.project(h2 @ jz - jz @ h2 - model))
    joint = joint_eigen_residuals(ops, h2, jz, n_levels)
    residuals["joint"] = max(joint)

    ev = lowest_eigenvalues(h2, n_levels)
    cf = spectra.chiral_levels(ep, n_levels)
    errs = [abs(float(a) - b) for a, b in zip(ev, cf)]

    drift = None
    if basis.n_per_mode - 5 >= 4:
        coarse = FockBasisSpec(n_per_mode=basis.n_per_mode - 5, m_ref=basis.m_ref,
                               w_ref=basis.w_ref, hbar=basis.hbar, max_dim=basis.max_dim)
        ops_c = build_operators(coarse, nc)
        h2_c = hermitize(ops_c.quadratic(h2_canonical_coefficients(ep)))
        drift = float(np.max(np.abs(ev - lowest_eigenvalues(h2_c, n_levels))))
    residuals["convergence"] = drift

    checks = {
        "commutators": max(residuals[k] for k in ("xx", "pp", "xp")) < tols["commutator"],
        "canonical": max(residuals[k] for k in ("canonical_xp", "canonical_xx", "canonical_pp")) < tols["commutator"],
        "dual_construction": residuals["dual"] < tols["dual"],
        "spectrum": max(errs) < tols["spectrum"],
        "h2_jz_commute": residuals["h2_jz"] < tols["h2_jz"],
        "joint_eigenstates": residuals["joint"] < tols["joint"],
    }
    return {
        "basis": {"n_per_mode": basis.n_per_mode, "m_ref": basis.m_ref,
                  "w_ref": basis.w_ref, "dim": basis.dim},
        "residual_norms": residuals,
        "eigenvalues": [float(e) for e in ev],
        "closed_form": cf,
        "abs_errors": errs,
        "converged": drift is not None and drift < tols["convergence"],
        "checks": checks,
    }
