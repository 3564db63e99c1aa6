"""
First-order expansion about the solvable point
==============================================

At ``alpha = 2`` the spectrum is known in closed form.  Differentiating in
``alpha`` gives ``E'(2) = -mu <log(x) / x**2>``, and ``E(2) + (alpha - 2) E'(2)``
is a cheap estimate.  Unlike the bound formula it carries no guarantee.
"""

from spiked_bounds import QuantumNumbers, SpikedOscParams, perturbation_estimate, reduce_to_radial, solve_eigenvalue
from spiked_bounds import sho_bound_energy

for dim in (2, 10):
    q = QuantumNumbers(0, 0, dim)
    est = perturbation_estimate(mu=10, alpha=1.9, q=q)
    p = SpikedOscParams(1, 10, 1.9)
    exact = solve_eigenvalue(reduce_to_radial(p, q)).energy
    bound = sho_bound_energy(p, q).energy
    print(
        f"N={dim:2d}: E(2)={est.e_at_2:.5f}  E'(2)={est.de_dalpha:.4f}  "
        f"estimate={est.estimate:.5f}  solver={exact:.5f}  upper bound={bound:.5f}"
    )

##############################################################################
# For a weak spike the state reaches far enough out that ``log x > 0``
# dominates and the slope changes sign.

est = perturbation_estimate(mu=1, alpha=1.9, q=QuantumNumbers(2, 0, 2))
print(f"\nmu=1, n=2, N=2: E'(2) = {est.de_dalpha:+.4f}")
