"""First-order expansion of ``E(alpha)`` for ``-Laplacian + x**2 + mu/x**alpha`` about ``alpha = 2``."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from .analytic import gk_energy
from .core import QuantumNumbers, SpikedOscParams, _check_positive, effective_lambda
from .solver import GridConfig, RadialSolution, reduce_to_radial, solve_eigenvalue


class QuadratureWarning(UserWarning):
    """The part of the integrand inside the grid's inner cutoff is not negligible."""


@dataclass(frozen=True)
class PerturbationEstimate:
    e_at_2: float
    de_dalpha: float
    alpha: float
    estimate: float


def solve_at_2(mu: float, q: QuantumNumbers, grid: Optional[GridConfig] = None) -> RadialSolution:
    """Numerical eigenstate of the exactly solvable ``alpha = 2`` problem (``lam = 1``)."""
    p = SpikedOscParams(lam=1.0, mu=mu, alpha=2.0)
    return solve_eigenvalue(reduce_to_radial(p, q), grid)


def log_moment(sol: RadialSolution) -> float:
    """``<u| log(x) / x**2 |u>`` by composite Simpson on the solution grid.

    Emits :class:`QuadratureWarning` when the power-law estimate of the
    integral over ``(0, x_min)`` exceeds 1e-6 of the total.
    """
    x, u = sol.x, sol.u
    total = simpson(u * u * np.log(x) / (x * x), x=x)
    # u**2 ~ x**(2 nu + 1) below x_min, with nu**2 = mu + Lambda**2
    mu = sol.problem.metadata.get("mu", 0.0) or 0.0
    nu = math.sqrt(mu + effective_lambda(sol.problem.q).lambda_eff ** 2)
    a = x[0]
    if nu > 0:
        tail = u[0] ** 2 / a * (math.log(a) / (2 * nu) - 1 / (4 * nu * nu))
    else:
        tail = math.inf
    if abs(tail) > 1e-6 * abs(total):
        warnings.warn(
            f"integrand below x_min={a:g} contributes ~{abs(tail):.1e} "
            f"({abs(tail / total):.1e} of the total); refine the grid",
            QuadratureWarning,
            stacklevel=2,
        )
    return float(total)


def de_dalpha_at_2(mu: float, q: QuantumNumbers, grid: Optional[GridConfig] = None) -> float:
    """``E'(2) = -mu <psi(2)| log(x) / x**2 |psi(2)>`` from the numerical ``alpha = 2`` state.

    Examples
    --------
    >>> round(de_dalpha_at_2(10, QuantumNumbers(0, 0, 2)), 3)
    -1.557
    """
    mu = _check_positive("mu", mu)
    return -mu * log_moment(solve_at_2(mu, q, grid))


def perturbation_estimate(
    mu: float, alpha: float, q: QuantumNumbers, grid: Optional[GridConfig] = None
) -> PerturbationEstimate:
    """``E(alpha) ~ E(2) + (alpha - 2) E'(2)`` with ``E(2)`` from the closed form."""
    alpha = _check_positive("alpha", alpha)
    e2 = gk_energy(1.0, mu, q)
    slope = de_dalpha_at_2(mu, q, grid)
    return PerturbationEstimate(e2, slope, alpha, e2 + (alpha - 2) * slope)
