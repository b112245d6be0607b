"""Exact phase-space algebra and Dirac reduction of the kinetic-ground system."""

from .constraints import (
    ConstraintSet,
    ReducedHamiltonian,
    constraint_drift,
    constraint_set,
    dirac_bracket,
    hamilton_equations,
    kinetic_ground_hamiltonian,
    lagrange_multipliers,
    primary_constraints,
    reduce_to_one_dof,
)
from .polynomial import (
    PHASE_VARIABLES,
    REDUCED_VARIABLES,
    SYMBOLS,
    PhasePolynomial,
    parse_polynomial,
    phase_variables,
    poisson,
)

__all__ = [
    "ConstraintSet",
    "PHASE_VARIABLES",
    "PhasePolynomial",
    "REDUCED_VARIABLES",
    "ReducedHamiltonian",
    "SYMBOLS",
    "constraint_drift",
    "constraint_set",
    "dirac_bracket",
    "hamilton_equations",
    "kinetic_ground_hamiltonian",
    "lagrange_multipliers",
    "parse_polynomial",
    "phase_variables",
    "poisson",
    "primary_constraints",
    "reduce_to_one_dof",
]
