"""Closed-form spectra used as exact references."""

from __future__ import annotations

import math

from .core import ParameterError, QuantumNumbers, _check_positive, effective_lambda


def gk_energy(lam: float, mu: float, q: QuantumNumbers) -> float:
    """Eigenvalue of ``-Laplacian + lam*x**2 + mu/x**2`` in ``q.dim`` dimensions.

    ``E = 2*sqrt(lam) * (2n + 1 + sqrt(mu + Lambda**2))`` with
    ``Lambda = l + N/2 - 1``.  ``mu = 0`` gives the harmonic oscillator.
    """
    lam = _check_positive("lam", lam)
    mu = _check_positive("mu", mu, allow_zero=True)
    cent = effective_lambda(q)
    radicand = mu + cent.lambda_eff**2
    if radicand < 0:
        raise ParameterError(f"mu + Lambda**2 must be >= 0, got {radicand}")
    return 2.0 * math.sqrt(lam) * (2 * q.n + 1 + math.sqrt(radicand))


def harmonic_energy(lam: float, q: QuantumNumbers) -> float:
    """Harmonic-oscillator eigenvalue ``2*sqrt(lam)*(2n + 1 + Lambda)``."""
    return gk_energy(lam, 0.0, q)
