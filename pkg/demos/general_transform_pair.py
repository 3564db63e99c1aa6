"""
Bounds for a general pair g(x**2) + f(1/x**2)
=============================================

Any potential of the form ``g(x**2) + f(1/x**2)`` with increasing ``g`` and
``f`` can be bounded.  The direction comes from the declared convexity:
here ``V = x**4 + 1/x**4`` has ``g(u) = u**2`` and ``f(v) = v**2``, both convex,
so the result is a lower bound.
"""

from spiked_bounds import QuantumNumbers, TransformPair, general_bound_energy, reduce_to_radial, solve_eigenvalue

pair = TransformPair(
    g=lambda u: u * u,
    dg=lambda u: 2 * u,
    f=lambda v: v * v,
    df=lambda v: 2 * v,
    g_convexity=1,
    f_convexity=1,
)

for dim in (2, 3, 5):
    for n in range(3):
        q = QuantumNumbers(n, 0, dim)
        r = general_bound_energy(pair, q)
        exact = solve_eigenvalue(reduce_to_radial(pair, q)).energy
        print(f"N={dim} n={n}: {r.direction.words} {r.energy:9.5f} <= {exact:9.5f}  (s={r.s_hat:.4f}, t={r.t_hat:.4f})")
