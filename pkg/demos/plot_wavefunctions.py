"""
Radial wavefunctions behind the bounds
======================================

The solver returns the reduced radial function ``u(x)`` normalized on its
grid.  This script draws the potential, the eigenvalues and the scaled
wavefunctions for N = 2..10, the way one would inspect the ``plot-data``
output.  Matplotlib is only needed for the final figure.
"""

import numpy as np

from spiked_bounds import QuantumNumbers, SpikedOscParams, reduce_to_radial, solve_eigenvalue
from spiked_bounds.solver import count_sign_changes

p = SpikedOscParams(lam=1, mu=10, alpha=2.1)
states = [solve_eigenvalue(reduce_to_radial(p, QuantumNumbers(2, 1, dim))) for dim in range(2, 11)]

for sol in states:
    print(f"N={sol.problem.q.dim:2d}  E={sol.energy:.5f}  nodes={count_sign_changes(sol.u[1:-1])}")

##############################################################################
# Each state is drawn at the height of its eigenvalue.

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 6))
    x = np.linspace(0.3, 6, 400)
    ax.plot(x, p.potential(x), color="k", lw=1)
    for sol in states:
        ax.plot(sol.x, sol.energy + 1.5 * sol.u, lw=0.8)
        ax.axhline(sol.energy, color="0.8", lw=0.5)
    ax.set(xlim=(0, 6), ylim=(10, 26), xlabel="x", ylabel="E")
    fig.savefig("wavefunctions_fig2.png", dpi=120)
    print("wrote wavefunctions_fig2.png")
