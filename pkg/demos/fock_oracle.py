"""
A numerical check in a truncated Fock space
===========================================

Deformed operators are built as matrices. We check their algebra, the
spectrum of H_2 and the reduced band against the closed forms. We also
look at what [H_2, J_z] actually is.
"""

import numpy as np

from nctrap import NCParams, TrapConfig, effective_params, jz_star_signal
from nctrap.fock import (
    FockBasisSpec,
    build_h2_hat,
    build_jz_hat,
    build_operators,
    commutator_h2_jz,
    commutator_residuals,
    model_commutator_h2_jz,
    spectrum_check,
    verify_reduced_limit,
)

trap = TrapConfig.trap_units(0.5)
nc = NCParams(0.1, 0.04)
ep = effective_params(trap, nc)
ops = build_operators(FockBasisSpec.for_params(ep, 30), nc)

# Commutators on the interior block, away from the truncation edge.
for key, value in commutator_residuals(ops, nc).items():
    print(f"{key:14s} {value:.2e}")

###############################################################################
# H_2 is built twice: from the deformed operators and from (M, G, K) on
# canonical ones. build_h2_hat raises if the two disagree. The lowest
# levels then match the two chiral frequencies.

chk = spectrum_check(trap, nc, n_per_mode=30, n_levels=6)
print(np.round(chk.eigenvalues, 12))
print(np.round(chk.closed_form, 12))
print("max error", chk.max_error)

###############################################################################
# J_z does not commute with H_2 here. Its isotropic theta and eta pieces
# leave a remainder proportional to [x^2, p^2], which only vanishes on
# the line eta = theta M^2 Omega_P^2.

h2, jz = build_h2_hat(ops, trap, nc), build_jz_hat(ops, nc)
model = model_commutator_h2_jz(ops, ep, nc)
print("||[H2, Jz]||         ", commutator_h2_jz(ops, h2, jz))
print("||[H2, Jz] - model|| ", np.max(np.abs(ops.project(h2 @ jz - jz @ h2 - model))))

###############################################################################
# Inside the lowest kinetic band the reduced-system spacings do hold.

rep = verify_reduced_limit(trap, nc, n_per_mode=30)
sig, _ = jz_star_signal(ep, nc)
print("band states  ", rep.n_band)
print("J_z spacing  ", np.diff(rep.jz_levels[:4]), "expected", float(sig.interval_hbar))
print("H_2 spacing  ", np.diff(rep.h2_levels[:4]), "expected", float(ep.K / ep.G))
