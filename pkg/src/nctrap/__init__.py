"""Trapped-ion spectra in noncommutative phase space.

Closed-form effective parameters and angular-momentum signals
(:mod:`nctrap.spectra`), exact constraint analysis (:mod:`nctrap.dirac`), a
truncated Fock-space oracle (:mod:`nctrap.fock`), sensitivity and rate
arithmetic (:mod:`nctrap.planner`) and the ``nctrap`` command line.
"""

from .algebra import (
    BoppMap,
    NCParams,
    TrapConfig,
    b_eta,
    bopp_map,
    c_from,
    deformed_ladder_coeffs,
    eta_from_c,
    from_trap_units,
    to_trap_units,
    undeformed_ladder_coeffs,
    xi_factor,
)
from .constants import UnitSystem, constants_table
from .errors import (
    ConsistencyError,
    DegenerateConstraintError,
    DimensionCapError,
    DomainError,
    InsufficientTruncationError,
    ModelValidityError,
    NCTrapError,
    StructuralError,
    UndefinedReductionError,
)
from .spectra import (
    AngularSignal,
    EffectiveParams,
    ReducedSystem,
    TildeParams,
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

__version__ = "0.1.0"

__all__ = [
    "AngularSignal",
    "BoppMap",
    "ConsistencyError",
    "DegenerateConstraintError",
    "DimensionCapError",
    "DomainError",
    "EffectiveParams",
    "InsufficientTruncationError",
    "ModelValidityError",
    "NCParams",
    "NCTrapError",
    "ReducedSystem",
    "StructuralError",
    "TildeParams",
    "TrapConfig",
    "UndefinedReductionError",
    "UnitSystem",
    "b_eta",
    "bopp_map",
    "c_from",
    "chiral_frequencies",
    "chiral_levels",
    "constants_table",
    "deformed_ladder_coeffs",
    "effective_params",
    "eta_from_c",
    "from_trap_units",
    "jz_star_signal",
    "jz_tilde_signal",
    "kinetic_levels",
    "reduced_spectrum",
    "reduced_system",
    "tilde_limit",
    "to_trap_units",
    "undeformed_ladder_coeffs",
    "xi_factor",
]
