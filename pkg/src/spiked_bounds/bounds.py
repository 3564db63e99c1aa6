"""
Energy bounds for ``V(x) = g(x**2) + f(1/x**2)`` in N dimensions.

Tangent potentials ``a*x**2 + b/x**2 + c`` to ``V`` are exactly solvable.
When ``g`` and ``f`` are convex every tangent lies below ``V`` and its
eigenvalue is a lower bound; when both are concave every tangent lies above
and gives an upper bound.  The tangent eigenvalue, as a function of the two
contact points ``s`` (for ``g``) and ``t`` (for ``f``), is::

    eps(s, t) = g(s^2) - s^2 g'(s^2) + f(1/t^2) - f'(1/t^2)/t^2
                + 2 sqrt(g'(s^2)) (2n + 1 + sqrt(f'(1/t^2) + Lambda^2))

and the best bound is its extremum: a maximum over a convex coordinate and a
minimum over a concave one.

For the spiked oscillator ``lam*x**2 + mu/x**alpha`` the ``s`` dependence
drops out and the optimal ``t`` is the unique positive root of::

    h(t) = 2 lam t^4 - mu alpha t^(2 - alpha) - 2 Lambda^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import gk_energy
from .core import (
    BoundDirection,
    ParameterError,
    QuantumNumbers,
    SpikedOscParams,
    classify_direction,
    convexity_sign,
    effective_lambda,
)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class BoundError(ArithmeticError):
    """Numerical failure while evaluating or optimizing a bound."""


class RootNotConverged(BoundError):
    def __init__(self, message, bracket):
        super().__init__(f"{message}; best bracket {bracket}")
        self.bracket = bracket


class MinimizerNotConverged(BoundError):
    def __init__(self, message, s, t, grad_norm):
        super().__init__(f"{message}; last iterate s={s!r}, t={t!r}, |grad|={grad_norm:.3e}")
        self.s = s
        self.t = t
        self.grad_norm = grad_norm


@dataclass(frozen=True)
class TransformPair:
    """Monotone transformations ``g(u)``, ``u = x**2``, and ``f(v)``, ``v = 1/x**2``.

    ``g_convexity`` and ``f_convexity`` are the declared signs (-1, 0, 1) of
    ``g''`` and ``f''``; they are trusted, not probed.
    """

    g: Callable[[float], float]
    dg: Callable[[float], float]
    f: Callable[[float], float]
    df: Callable[[float], float]
    g_convexity: int
    f_convexity: int

    @classmethod
    def power(cls, p: SpikedOscParams) -> "TransformPair":
        """``g(u) = lam*u**(beta/2)``, ``f(v) = mu*v**(alpha/2)``."""
        lam, mu, a, b = p.lam, p.mu, p.alpha, p.beta
        return cls(
            g=lambda u: lam * u ** (b / 2),
            dg=lambda u: lam * (b / 2) * u ** (b / 2 - 1),
            f=lambda v: mu * v ** (a / 2),
            df=lambda v: mu * (a / 2) * v ** (a / 2 - 1),
            g_convexity=convexity_sign(b),
            f_convexity=convexity_sign(a),
        )

    def potential(self, x):
        x2 = x * x
        return self.g(x2) + self.f(1.0 / x2)


@dataclass(frozen=True)
class BoundResult:
    energy: float
    direction: BoundDirection
    s_hat: float
    t_hat: float
    residual: float
    iterations: int


# --------------------------------------------------------------------------
# spiked oscillator: root equation in t


def root_function(t, p: SpikedOscParams, lambda_eff: float):
    """``h(t) = 2 lam t^4 - mu alpha t^(2-alpha) - 2 Lambda^2``."""
    return 2 * p.lam * t**4 - p.mu * p.alpha * t ** (2 - p.alpha) - 2 * lambda_eff**2


def root_function_prime(t, p: SpikedOscParams):
    return 8 * p.lam * t**3 - p.mu * p.alpha * (2 - p.alpha) * t ** (1 - p.alpha)


def root_function_second(t, p: SpikedOscParams):
    a = p.alpha
    return 24 * p.lam * t**2 - p.mu * a * (2 - a) * (1 - a) * t ** (-a)


def stationary_point(p: SpikedOscParams) -> float:
    """Location of the interior minimum of ``h`` for ``alpha < 2``.

    Solves ``h'(t) = 0``: ``t* = (mu*alpha*(2 - alpha) / (8*lam))**(1/(2 + alpha))``.
    """
    if not p.alpha < 2:
        raise ParameterError(f"h has no interior stationary point for alpha={p.alpha}")
    return (p.mu * p.alpha * (2 - p.alpha) / (8 * p.lam)) ** (1 / (2 + p.alpha))


def _check_sho(p: SpikedOscParams, lambda_eff: float):
    if not isinstance(p, SpikedOscParams):
        raise ParameterError(f"expected SpikedOscParams, got {type(p).__name__}")
    if p.beta != 2:
        raise ParameterError(f"the one-variable bound needs beta=2, got beta={p.beta}")
    if not (math.isfinite(lambda_eff) and lambda_eff >= 0):
        raise ParameterError(f"Lambda must be finite and >= 0, got {lambda_eff}")


def root_bracket(p: SpikedOscParams, lambda_eff: float) -> tuple[float, float]:
    """Interval ``(t_lo, t_hi)`` with ``h(t_lo) < 0 < h(t_hi)``.

    For ``alpha < 2`` the left edge is the stationary point of ``h``, right of
    which ``h`` is increasing; otherwise ``h`` is increasing on the whole
    axis and the bracket is grown geometrically from ``t = 1``.
    """
    _check_sho(p, lambda_eff)

    def h(t):
        return root_function(t, p, lambda_eff)

    if p.alpha < 2:
        t_lo = stationary_point(p)
        if not h(t_lo) < 0:
            raise BoundError(f"h(t*) = {h(t_lo)!r} is not negative")
        t_hi = 2 * t_lo
        while h(t_hi) <= 0:
            t_lo, t_hi = t_hi, 2 * t_hi
        return t_lo, t_hi

    t_lo = t_hi = 1.0
    if h(1.0) < 0:
        while h(t_hi) <= 0:
            t_lo, t_hi = t_hi, 2 * t_hi
    else:
        while h(t_lo) >= 0:
            t_lo, t_hi = t_lo / 2, t_lo
    return t_lo, t_hi


def solve_root_t(
    p: SpikedOscParams,
    lambda_eff: float,
    tol_abs: float = 1e-13,
    tol_rel: float = 1e-13,
    max_iter: int = 200,
) -> tuple[float, int]:
    """Unique positive root of ``h`` and the number of iterations used.

    Bisection narrows the bracket to a relative width of 1e-3, then a
    safeguarded Newton iteration finishes; any Newton step that leaves the
    current bracket is replaced by a bisection step.
    """
    _check_sho(p, lambda_eff)
    lam, mu, a = p.lam, p.mu, p.alpha
    if a == 2:
        return ((mu + lambda_eff**2) / lam) ** 0.25, 0
    if lambda_eff == 0 and a < 2:
        return (mu * a / (2 * lam)) ** (1 / (2 + a)), 0

    def h(t):
        return root_function(t, p, lambda_eff)

    def converged(t, ht):
        return abs(ht) <= tol_abs + tol_rel * 2 * lam * t**4

    lo, hi = root_bracket(p, lambda_eff)
    it = 0
    while hi - lo > 1e-3 * hi:
        it += 1
        mid = 0.5 * (lo + hi)
        if h(mid) < 0:
            lo = mid
        else:
            hi = mid

    t = 0.5 * (lo + hi)
    ht = h(t)
    while not converged(t, ht):
        it += 1
        if it > max_iter:
            raise RootNotConverged("root of h did not converge", (lo, hi))
        if ht < 0:
            lo = t
        else:
            hi = t
        dh = root_function_prime(t, p)
        step = ht / dh if dh != 0 else math.inf
        t_new = t - step
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        if t_new == t or hi - lo <= 4 * np.finfo(float).eps * hi:
            t, ht = t_new, h(t_new)
            if converged(t, ht):
                break
            raise RootNotConverged("bracket collapsed before |h| reached tolerance", (lo, hi))
        t = t_new
        ht = h(t)
    return t, it


def sho_energy_at(t, p: SpikedOscParams, n: int):
    """``(1 - alpha/2) mu / t^alpha + 2 lam t^2 + 2 sqrt(lam) (2n + 1)``."""
    return (1 - p.alpha / 2) * p.mu * t ** (-p.alpha) + 2 * p.lam * t**2 + 2 * math.sqrt(p.lam) * (2 * n + 1)


def sho_bound_energy(p: SpikedOscParams, q: QuantumNumbers) -> BoundResult:
    """Bound on ``E_nl`` for ``lam*x**2 + mu/x**alpha`` in ``q.dim`` dimensions.

    An upper bound for ``alpha < 2``, a lower bound for ``alpha > 2`` and the
    exact eigenvalue at ``alpha = 2``.

    Examples
    --------
    >>> r = sho_bound_energy(SpikedOscParams(lam=1, mu=10, alpha=1.9), QuantumNumbers(0, 0, 2))
    >>> round(r.energy, 5), r.direction.name
    (8.5119, 'UPPER')
    """
    lambda_eff = effective_lambda(q).lambda_eff
    _check_sho(p, lambda_eff)
    direction = classify_direction(0, convexity_sign(p.alpha))
    if direction is BoundDirection.EXACT:
        t = ((p.mu + lambda_eff**2) / p.lam) ** 0.25
        return BoundResult(gk_energy(p.lam, p.mu, q), direction, 0.0, t, 0.0, 0)
    t, iterations = solve_root_t(p, lambda_eff)
    return BoundResult(
        energy=sho_energy_at(t, p, q.n),
        direction=direction,
        s_hat=0.0,
        t_hat=t,
        residual=abs(root_function(t, p, lambda_eff)),
        iterations=iterations,
    )


# --------------------------------------------------------------------------
# two-variable functionals


def power_bound_functional(s, t, p: SpikedOscParams, q: QuantumNumbers):
    """Tangent eigenvalue ``eps(s, t)`` for ``lam*x**beta + mu/x**alpha``."""
    lam, mu, a, b = p.lam, p.mu, p.alpha, p.beta
    lam_eff = effective_lambda(q).lambda_eff
    return (
        lam * (1 - b / 2) * s**b
        + (1 - a / 2) * mu * t ** (-a)
        + np.sqrt(2 * lam * b * s ** (b - 2)) * (2 * q.n + 1 + np.sqrt(mu * a / 2 * t ** (2 - a) + lam_eff**2))
    )


def general_bound_functional(s, t, pair: TransformPair, q: QuantumNumbers) -> float:
    """Tangent eigenvalue ``eps(s, t)`` for an arbitrary transform pair."""
    lam_eff = effective_lambda(q).lambda_eff
    u = s * s
    v = 1.0 / (t * t)
    dg = pair.dg(u)
    df = pair.df(v)
    if dg < 0 or df + lam_eff**2 < 0:
        raise BoundError(
            f"negative radicand at s={s!r}, t={t!r} (g'={dg!r}, f'={df!r}); "
            "g and f must be increasing"
        )
    return (
        pair.g(u) - u * dg + pair.f(v) - v * df
        + 2 * math.sqrt(dg) * (2 * q.n + 1 + math.sqrt(df + lam_eff**2))
    )


def _as_cost(value, sense):
    # minimize sense*value; nan/overflow counts as worst
    value = float(value)
    if math.isnan(value):
        return math.inf
    return sense * value


def _line_extremum(phi, x0, sense, xtol):
    """Golden-section search for the minimum of ``sense*phi`` along ``y = log x``."""

    def cost(y):
        with np.errstate(all="ignore"):
            try:
                return _as_cost(phi(math.exp(y)), sense)
            except OverflowError:
                return math.inf

    y0 = math.log(x0)
    step = 0.1
    a, b = y0 - step, y0 + step
    fa, f0, fb = cost(a), cost(y0), cost(b)
    m, fm = y0, f0
    # expand geometrically until the middle point is lowest
    for _ in range(200):
        if fm <= fa and fm <= fb:
            break
        if fb < fa:
            a, fa, m, fm = m, fm, b, fb
            b = m + (m - a) / GOLDEN
            fb = cost(b)
        else:
            b, fb, m, fm = m, fm, a, fa
            a = m - (b - m) / GOLDEN
            fa = cost(a)
    else:
        raise BoundError(f"no interior extremum found along the line from x={x0!r}")

    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = cost(c), cost(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = cost(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = cost(d)
    candidates = [(fm, m), (fc, c), (fd, d)]
    best = min(candidates)[1]
    return math.exp(best)


def _seed(fun, s_sense, t_sense, grid):
    # outer optimum over s of the inner optimum over t on a log grid
    best_s = best_t = None
    best_outer = math.inf
    for s in grid:
        inner_best, inner_t = math.inf, None
        for t in grid:
            with np.errstate(all="ignore"):
                try:
                    c = _as_cost(fun(s, t), t_sense or 1)
                except OverflowError:
                    c = math.inf
            if c < inner_best:
                inner_best, inner_t = c, t
        if inner_t is None:
            continue
        outer = (s_sense or 1) * ((t_sense or 1) * inner_best)
        if outer < best_outer:
            best_outer, best_s, best_t = outer, s, inner_t
    if best_s is None:
        raise BoundError("bound functional is not finite anywhere on the seed grid")
    return best_s, best_t


def gradient_norm(fun, s, t, rel_step=1e-5):
    """Central finite-difference gradient norm of ``fun(s, t)``."""
    hs, ht = rel_step * s, rel_step * t
    ds = (fun(s + hs, t) - fun(s - hs, t)) / (2 * hs)
    dt = (fun(s, t + ht) - fun(s, t - ht)) / (2 * ht)
    return math.hypot(ds, dt)


def extremize(
    fun,
    s_convexity: int,
    t_convexity: int,
    xtol: float = 1e-10,
    max_sweeps: int = 500,
    grid_points: int = 50,
    grid_range: tuple[float, float] = (1e-4, 1e4),
):
    """Optimal ``(s, t)`` of a tangent-eigenvalue functional.

    Alternating coordinate search: each coordinate is maximized if its
    transformation is convex, minimized if concave and left alone if linear.
    The start point is the best node of a ``grid_points``-square log grid.

    Returns ``(s, t, value, sweeps)``.
    """
    s_sense = -int(s_convexity)
    t_sense = -int(t_convexity)
    grid = np.geomspace(grid_range[0], grid_range[1], grid_points)
    s, t = _seed(fun, s_sense, t_sense, grid)
    value = float(fun(s, t))
    eps = np.finfo(float).eps
    for sweep in range(1, max_sweeps + 1):
        s_old, t_old, value_old = s, t, value
        if s_sense:
            s = _line_extremum(lambda x: fun(x, t), s, s_sense, xtol)
        if t_sense:
            t = _line_extremum(lambda x: fun(s, x), t, t_sense, xtol)
        value = float(fun(s, t))
        moved = max(abs(s - s_old) / s_old, abs(t - t_old) / t_old)
        if moved < xtol or abs(value - value_old) <= 16 * eps * max(1.0, abs(value)):
            return s, t, value, sweep
    raise MinimizerNotConverged(
        f"coordinate search did not converge in {max_sweeps} sweeps", s, t, gradient_norm(fun, s, t)
    )


def power_bound_energy(p: SpikedOscParams, q: QuantumNumbers, **options) -> BoundResult:
    """Bound for ``lam*x**beta + mu/x**alpha`` by extremizing over both contact points.

    Keyword options are passed to :func:`extremize`.
    """
    g_sign, f_sign = convexity_sign(p.beta), convexity_sign(p.alpha)

    def fun(s, t):
        return power_bound_functional(s, t, p, q)

    s, t, value, sweeps = extremize(fun, g_sign, f_sign, **options)
    return BoundResult(
        energy=value,
        direction=classify_direction(g_sign, f_sign),
        s_hat=s,
        t_hat=t,
        residual=gradient_norm(fun, s, t),
        iterations=sweeps,
    )


def general_bound_energy(pair: TransformPair, q: QuantumNumbers, **options) -> BoundResult:
    """Bound for ``g(x**2) + f(1/x**2)`` from a user-supplied transform pair."""

    def fun(s, t):
        return general_bound_functional(s, t, pair, q)

    s, t, value, sweeps = extremize(fun, pair.g_convexity, pair.f_convexity, **options)
    return BoundResult(
        energy=value,
        direction=classify_direction(pair.g_convexity, pair.f_convexity),
        s_hat=s,
        t_hat=t,
        residual=gradient_norm(fun, s, t),
        iterations=sweeps,
    )
