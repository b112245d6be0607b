"""Second-class constraints of the kinetic-ground reduced system.

In the lowest kinetic level the planar system keeps only the coupling term
G and the potential K x²/2, and its momenta are tied to the coordinates by

    φ_i = p_i + (G/2) ε_ij x_j ≈ 0,

two second-class constraints with constant bracket matrix C = G ε. This
module computes C and C⁻¹, Dirac brackets, the Lagrange multipliers of the
total Hamiltonian, and the elimination of (x₂, p₂) that leaves one degree
of freedom. It is specialized to exactly this structure.
"""

from dataclasses import dataclass

import sympy

from ..errors import DegenerateConstraintError, StructuralError
from .polynomial import (
    PHASE_VARIABLES,
    REDUCED_VARIABLES,
    PhasePolynomial,
    _is_symbolic,
    _to_sympy,
    coerce,
    phase_variables,
    poisson,
)


def _is_zero_scalar(c):
    return coerce(c) == 0


def _invert(matrix):
    """Exact Gauss-Jordan inverse; None if singular."""
    n = len(matrix)
    a = [[_to_sympy(coerce(v)) for v in row] + [sympy.Integer(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not _is_zero_scalar(a[r][col])), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [sympy.cancel(v / pv) for v in a[col]]
        for r in range(n):
            if r != col and not _is_zero_scalar(a[r][col]):
                f = a[r][col]
                a[r] = [sympy.cancel(v - f * w) for v, w in zip(a[r], a[col])]
    return tuple(tuple(coerce(v) for v in row[n:]) for row in a)


@dataclass(frozen=True)
class ConstraintSet:
    """Constraints φ_i with their bracket matrix C and its inverse."""

    constraints: tuple
    matrix: tuple
    inverse: tuple

    @property
    def G(self):
        return self.matrix[0][1]


def constraint_set(constraints):
    """Build a ConstraintSet, recomputing C_ij = {φ_i, φ_j}.

    Only the two-constraint second-class case is supported: C must be a
    constant, antisymmetric, invertible 2×2 matrix.
    """
    constraints = tuple(constraints)
    if len(constraints) != 2:
        raise StructuralError("exactly two primary constraints are supported")
    matrix = []
    for a in constraints:
        row = []
        for b in constraints:
            c = poisson(a, b)
            if not c.is_constant():
                raise StructuralError("constraint brackets must be constants")
            row.append(c.constant_term())
        matrix.append(tuple(row))
    matrix = tuple(matrix)
    for i in range(2):
        for j in range(2):
            if not _is_zero_scalar(_to_sympy(matrix[i][j]) + _to_sympy(matrix[j][i])):
                raise StructuralError("constraint matrix is not antisymmetric")
    inverse = _invert(matrix)
    if inverse is None:
        raise DegenerateConstraintError("constraint matrix is singular (G = 0?)")
    return ConstraintSet(constraints=constraints, matrix=matrix, inverse=inverse)


def primary_constraints(G):
    """φ₁ = p₁ + (G/2) x₂, φ₂ = p₂ - (G/2) x₁ for a scalar G (exact or symbolic)."""
    G = coerce(G)
    if _is_zero_scalar(G):
        raise DegenerateConstraintError("G = 0: constraint matrix C = G ε is singular")
    x1, x2, p1, p2 = phase_variables()
    half = G * sympy.Rational(1, 2) if _is_symbolic(G) else G / 2
    return constraint_set((p1 + x2 * half, p2 - x1 * half))


def dirac_bracket(a, b, cs):
    """{A,B}_D = {A,B} - Σ_ij {A,φ_i} (C⁻¹)_ij {φ_j,B}."""
    total = poisson(a, b)
    left = [poisson(a, phi) for phi in cs.constraints]
    right = [poisson(phi, b) for phi in cs.constraints]
    for i, li in enumerate(left):
        if li.is_zero():
            continue
        for j, rj in enumerate(right):
            cij = cs.inverse[i][j]
            if rj.is_zero() or _is_zero_scalar(cij):
                continue
            total = total - li * rj * cij
    return total


def lagrange_multipliers(h, cs):
    """Solve C λ = -{φ, H} so that H + λ_k φ_k preserves the constraints."""
    drift = [poisson(phi, h) for phi in cs.constraints]
    lambdas = []
    for i in range(len(cs.constraints)):
        acc = PhasePolynomial({}, h.variables)
        for j, dj in enumerate(drift):
            acc = acc - dj * cs.inverse[i][j]
        lambdas.append(acc)
    return tuple(lambdas)


def hamilton_equations(h, cs, lambdas=None):
    """Velocities from the total Hamiltonian H + λ_k φ_k (λ held fixed).

    Returns ``(xdot, pdot)`` tuples of polynomials.
    """
    if lambdas is None:
        lambdas = lagrange_multipliers(h, cs)
    n = h.n_dof
    qs, ps = h.variables[:n], h.variables[n:]
    xdot, pdot = [], []
    for q, p in zip(qs, ps):
        vx = h.diff(p)
        vp = -h.diff(q)
        for lam, phi in zip(lambdas, cs.constraints):
            vx = vx + lam * phi.diff(p)
            vp = vp - lam * phi.diff(q)
        xdot.append(vx)
        pdot.append(vp)
    return tuple(xdot), tuple(pdot)


def constraint_drift(h, cs, lambdas=None):
    """{φ_i, H} + λ_k {φ_i, φ_k}; identically zero for correct multipliers."""
    if lambdas is None:
        lambdas = lagrange_multipliers(h, cs)
    out = []
    for i, phi in enumerate(cs.constraints):
        acc = poisson(phi, h)
        for k, lam in enumerate(lambdas):
            acc = acc + lam * cs.matrix[i][k]
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class ReducedHamiltonian:
    """H*(x, p) = p²/2μ* + μ*ω*² x²/2 + offset after eliminating (x₂, p₂)."""

    hamiltonian: PhasePolynomial
    mu_star: object
    omega_star_sq: object
    offset: object
    bracket: object

    @property
    def omega_star(self):
        w2 = self.omega_star_sq
        if _is_symbolic(w2):
            return sympy.sqrt(w2)
        from .. import _numeric

        return _numeric.sqrt(w2)


def _check_standard_form(cs):
    G = cs.G
    expected = primary_constraints(G).constraints
    if tuple(cs.constraints) != expected:
        raise StructuralError("constraints are not of the form p_i + (G/2) eps_ij x_j")
    return G


def reduce_to_one_dof(h, cs):
    """Eliminate x₂ = -2p₁/G and p₂ = G x₁/2, then set x = √2 x₁, p = √2 p₁.

    ``h`` must be quadratic without cross terms after elimination (the
    kinetic-ground Hamiltonian K x_i x_i / 2 + const). The result carries
    μ* and ω*² read off the coefficients, and the Dirac bracket {x, p}_D.
    """
    G = _check_standard_form(cs)
    x1, x2, p1, p2 = phase_variables()
    inv_G = coerce(1 / _to_sympy(G)) if _is_symbolic(G) else 1 / G
    half_G = coerce(_to_sympy(G) / 2) if _is_symbolic(G) else G / 2
    eliminated = h.substitute({"x2": p1 * (-2 * inv_G), "p2": x1 * half_G})
    if any(e[1] or e[3] for e in eliminated.terms):
        raise StructuralError("dependent variables survive elimination")

    # x1 = x/√2, p1 = p/√2: a monomial of total degree d picks up 2^(-d/2)
    reduced_terms = {}
    for (a, _, b, _), c in eliminated.terms.items():
        if (a + b) % 2:
            raise StructuralError("odd-degree term: rescaling by sqrt(2) leaves the rationals")
        scale = sympy.Rational(1, 2 ** ((a + b) // 2))
        reduced_terms[(a, b)] = coerce(_to_sympy(c) * scale)
    reduced = PhasePolynomial(reduced_terms, REDUCED_VARIABLES)

    allowed = {(2, 0), (0, 2), (0, 0)}
    if set(reduced.terms) - allowed:
        raise StructuralError("reduced Hamiltonian is not of oscillator form")
    a = _to_sympy(reduced.coefficient(p=2))
    b = _to_sympy(reduced.coefficient(x=2))
    if a == 0 or b == 0:
        raise StructuralError("reduced Hamiltonian lacks a p^2 or x^2 term")
    mu_star = coerce(1 / (2 * a))
    omega_star_sq = coerce(4 * a * b)

    # {x, p}_D = 2 {x1, p1}_D
    xp = dirac_bracket(x1, p1, cs) * 2
    if not xp.is_constant():
        raise StructuralError("reduced pair bracket is not constant")
    return ReducedHamiltonian(hamiltonian=reduced, mu_star=mu_star,
                              omega_star_sq=omega_star_sq,
                              offset=reduced.constant_term(),
                              bracket=xp.constant_term())


def kinetic_ground_hamiltonian(K, E_k0=0):
    """H₀ = (K/2)(x₁² + x₂²) + E_k0 as a polynomial."""
    x1, x2, _, _ = phase_variables(PHASE_VARIABLES)
    K = coerce(K)
    half_K = coerce(_to_sympy(K) / 2) if _is_symbolic(K) else K / 2
    return (x1 * x1 + x2 * x2) * half_K + E_k0
