"""
Shared domain types and the N-dimensional centrifugal reduction.

Units are hbar = 2m = 1 throughout, so the Hamiltonian is ``-Laplacian + V``.
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass


class ParameterError(ValueError):
    """Raised when a physical parameter or quantum number is out of range."""


class BoundDirection(enum.Enum):
    """Relation between a bound-formula value and the true eigenvalue."""

    LOWER = "lower"
    UPPER = "upper"
    EXACT = "exact"
    NO_GUARANTEE = "none"

    @property
    def words(self) -> str:
        return {
            BoundDirection.LOWER: "lower bound",
            BoundDirection.UPPER: "upper bound",
            BoundDirection.EXACT: "exact",
            BoundDirection.NO_GUARANTEE: "no guarantee",
        }[self]


def _check_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        if isinstance(value, numbers.Real) and float(value).is_integer():
            value = int(value)
        else:
            raise ParameterError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ParameterError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def _check_positive(name: str, value, allow_zero: bool = False) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value}")
    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise ParameterError(f"{name} must be {bound}, got {value}")
    return value


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial quantum number ``n``, angular momentum ``l`` and dimension ``dim``."""

    n: int = 0
    l: int = 0  # noqa: E741
    dim: int = 3

    def __post_init__(self):
        object.__setattr__(self, "n", _check_int("n", self.n, 0))
        object.__setattr__(self, "l", _check_int("l", self.l, 0))
        object.__setattr__(self, "dim", _check_int("dim", self.dim, 2))


@dataclass(frozen=True)
class EffectiveCentrifugal:
    """Effective angular parameter ``Lambda = l + N/2 - 1`` and ``Lambda**2 - 1/4``."""

    lambda_eff: float
    reduced_coeff: float


@dataclass(frozen=True)
class SpikedOscParams:
    """Couplings of ``V(x) = lam * x**beta + mu / x**alpha``."""

    lam: float = 1.0
    mu: float = 1.0
    alpha: float = 2.0
    beta: float = 2.0

    def __post_init__(self):
        for name in ("lam", "mu", "alpha", "beta"):
            object.__setattr__(self, name, _check_positive(name, getattr(self, name)))

    def potential(self, x):
        return self.lam * x**self.beta + self.mu * x ** (-self.alpha)


def effective_lambda(q: QuantumNumbers) -> EffectiveCentrifugal:
    """Centrifugal reduction for quantum numbers `q`.

    The reduced radial function ``u = r**((N-1)/2) * R`` sees the extra
    potential ``(Lambda**2 - 1/4) / r**2``.

    Examples
    --------
    >>> effective_lambda(QuantumNumbers(n=2, l=1, dim=10))
    EffectiveCentrifugal(lambda_eff=5.0, reduced_coeff=24.75)
    """
    if not isinstance(q, QuantumNumbers):
        raise ParameterError(f"expected QuantumNumbers, got {type(q).__name__}")
    lam_eff = q.l + q.dim / 2.0 - 1.0
    return EffectiveCentrifugal(lam_eff, lam_eff * lam_eff - 0.25)


def convexity_sign(exponent: float) -> int:
    """Sign of the second derivative of ``u -> u**(exponent/2)`` on ``u > 0``."""
    if exponent > 2:
        return 1
    if exponent < 2:
        return -1
    return 0


def classify_direction(g_convexity: int, f_convexity: int) -> BoundDirection:
    """Bound direction from the signs of ``g''`` and ``f''``.

    A linear member (sign 0) takes the direction of the other one; strictly
    opposite signs give no guarantee.
    """
    signs = []
    for name, value in (("g_convexity", g_convexity), ("f_convexity", f_convexity)):
        if value not in (-1, 0, 1):
            raise ParameterError(f"{name} must be -1, 0 or 1, got {value!r}")
        signs.append(int(value))
    g, f = signs
    if g == 0 and f == 0:
        return BoundDirection.EXACT
    if g >= 0 and f >= 0:
        return BoundDirection.LOWER
    if g <= 0 and f <= 0:
        return BoundDirection.UPPER
    return BoundDirection.NO_GUARANTEE
