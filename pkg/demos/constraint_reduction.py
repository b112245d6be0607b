"""
Second-class constraints of the kinetic ground
==============================================

In the lowest kinetic level the momenta are tied to the coordinates. The
constraint brackets, the Dirac brackets and the reduced oscillator all
follow in closed form.
"""

import sympy

from nctrap.dirac import (
    SYMBOLS,
    dirac_bracket,
    kinetic_ground_hamiltonian,
    lagrange_multipliers,
    phase_variables,
    primary_constraints,
    reduce_to_one_dof,
)

G, K = SYMBOLS["G"], SYMBOLS["K"]
cs = primary_constraints(G)
x1, x2, p1, p2 = phase_variables()

print("phi_1 =", cs.constraints[0])
print("phi_2 =", cs.constraints[1])
print("C     =", sympy.Matrix(cs.matrix))
print("C^-1  =", sympy.Matrix(cs.inverse))

###############################################################################
# Dirac brackets of the phase-space coordinates. Positions no longer
# commute, and each x_i keeps only half of its canonical bracket with p_i.

for a, b, name in ((x1, x2, "x1,x2"), (p1, p2, "p1,p2"), (x1, p1, "x1,p1")):
    print(f"{{{name}}}_D =", dirac_bracket(a, b, cs))

###############################################################################
# The Hamiltonian K x.x / 2 needs multipliers to keep the constraints in
# place. Eliminating (x2, p2) then leaves one oscillator.

h = kinetic_ground_hamiltonian(K)
lam = lagrange_multipliers(h, cs)
print("lambda =", [str(v) for v in lam])

red = reduce_to_one_dof(h, cs)
print("H*     =", red.hamiltonian)
print("mu*    =", red.mu_star)
print("omega* =", red.omega_star)
print("{x,p}  =", red.bracket)
