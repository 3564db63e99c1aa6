"""Eigenvalue bounds for singular potentials ``g(x**2) + f(1/x**2)`` in N dimensions."""

from .analytic import gk_energy, harmonic_energy
from .bounds import (
    BoundError,
    BoundResult,
    MinimizerNotConverged,
    RootNotConverged,
    TransformPair,
    general_bound_energy,
    power_bound_energy,
    root_bracket,
    sho_bound_energy,
    solve_root_t,
)
from .core import (
    BoundDirection,
    EffectiveCentrifugal,
    ParameterError,
    QuantumNumbers,
    SpikedOscParams,
    classify_direction,
    effective_lambda,
)
from .perturb import PerturbationEstimate, de_dalpha_at_2, perturbation_estimate
from .solver import (
    GridConfig,
    GridTooCoarse,
    RadialProblem,
    RadialSolution,
    SolverError,
    export_wavefunction,
    reduce_to_radial,
    solve_eigenvalue,
)

__version__ = "0.1.0"
