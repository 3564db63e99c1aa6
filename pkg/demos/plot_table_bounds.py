"""
Upper and lower bounds for the spiked harmonic oscillator
==========================================================

For ``H = -Laplacian + x**2 + 10/x**alpha`` the one-variable bound formula
gives an upper bound on every eigenvalue when ``alpha < 2`` and a lower bound
when ``alpha > 2``.  Here both are compared against the Numerov solver for
dimensions N = 2..10.
"""

from spiked_bounds import QuantumNumbers, SpikedOscParams, reduce_to_radial, sho_bound_energy, solve_eigenvalue

##############################################################################
# Ground state, alpha = 1.9: the formula sits above the eigenvalue.

p = SpikedOscParams(lam=1, mu=10, alpha=1.9)
print(" N   E_00 (solver)   E_00 (upper)")
for dim in range(2, 11):
    q = QuantumNumbers(n=0, l=0, dim=dim)
    bound = sho_bound_energy(p, q)
    exact = solve_eigenvalue(reduce_to_radial(p, q)).energy
    print(f"{dim:2d}   {exact:12.5f}   {bound.energy:12.5f}")

##############################################################################
# n = 2, l = 1, alpha = 2.1: now the tangent potentials lie below V and the
# formula is a lower bound.

p = SpikedOscParams(lam=1, mu=10, alpha=2.1)
print("\n N   E_21 (lower)   E_21 (solver)")
for dim in range(2, 11):
    q = QuantumNumbers(n=2, l=1, dim=dim)
    bound = sho_bound_energy(p, q)
    exact = solve_eigenvalue(reduce_to_radial(p, q)).energy
    print(f"{dim:2d}   {bound.energy:12.5f}   {exact:12.5f}")

##############################################################################
# The optimal contact point ``t_hat`` solves a quartic-like equation with a
# single positive root, so the bound costs microseconds.

q = QuantumNumbers(2, 1, 10)
r = sho_bound_energy(p, q)
print(f"\nt_hat = {r.t_hat:.10f}, |h(t_hat)| = {r.residual:.1e}, direction: {r.direction.words}")
