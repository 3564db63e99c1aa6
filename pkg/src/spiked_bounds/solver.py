"""
Numerov shooting solver for the reduced radial Schrödinger equation.

With ``psi = u(x) / x**((N-1)/2) * Y_l`` the N-dimensional problem becomes::

    -u'' + [V(x) + (Lambda**2 - 1/4) / x**2] u = E u,    Lambda = l + N/2 - 1

which is integrated on a uniform grid.  The eigenvalue with ``n`` nodes is
isolated by bisection on the Sturm node count of the outward solution and
then polished by root finding on the log-derivative mismatch between outward
and inward solutions at the outermost classical turning point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .bounds import (
    BoundError,
    TransformPair,
    general_bound_energy,
    power_bound_energy,
    sho_bound_energy,
)
from .core import ParameterError, QuantumNumbers, SpikedOscParams, effective_lambda

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure-Python fallback, slow but correct
    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda fn: fn


class SolverError(ArithmeticError):
    """The shooting solver could not produce the requested eigenstate."""


class GridTooCoarse(SolverError):
    pass


_RESCALE = 1e150
_MAX_STEP_LOAD = 0.05
# inner log-variable stretch: up to x = _INNER_RATIO * h, log step _INNER_DY
_INNER_RATIO = 50.0
_INNER_DY = 5e-3
_INNER_DEEP = 1e-10


@njit(cache=True, nogil=True)
def numerov_march(q, h, y0, y1):
    """Integrate ``y'' = q y`` across the grid from two starting values.

    The solution is rescaled whenever it exceeds 1e150 so that only its shape
    is meaningful.
    """
    m = q.shape[0]
    y = np.empty(m)
    y[0] = y0
    y[1] = y1
    c = h * h / 12.0
    for i in range(1, m - 1):
        y[i + 1] = (2.0 * (1.0 + 5.0 * c * q[i]) * y[i] - (1.0 - c * q[i - 1]) * y[i - 1]) / (1.0 - c * q[i + 1])
        if abs(y[i + 1]) > _RESCALE:
            for j in range(i + 2):
                y[j] /= _RESCALE
    return y


@njit(cache=True, nogil=True)
def numerov_count(q, h, y0, y1):
    """Sign changes of the Numerov solution of ``y'' = q y``, counted on the fly.

    Unlike counting on the output of :func:`numerov_march`, no sign change is
    lost when a steep tail forces so many rescalings that earlier values
    underflow to zero.
    """
    c = h * h / 12.0
    count = 0
    a, b = y0, y1
    last = a
    if b != 0.0:
        if last != 0.0 and (b > 0.0) != (last > 0.0):
            count += 1
        last = b
    for i in range(1, q.shape[0] - 1):
        nxt = (2.0 * (1.0 + 5.0 * c * q[i]) * b - (1.0 - c * q[i - 1]) * a) / (1.0 - c * q[i + 1])
        if nxt != 0.0:
            if last != 0.0 and (nxt > 0.0) != (last > 0.0):
                count += 1
            last = nxt
        a, b = b, nxt
        if abs(b) > _RESCALE:
            a /= _RESCALE
            b /= _RESCALE
    return count


@njit(cache=True, nogil=True)
def count_sign_changes(y):
    count = 0
    last = 0.0
    for v in y:
        if v != 0.0:
            if last != 0.0 and (v > 0.0) != (last > 0.0):
                count += 1
            last = v
    return count


@dataclass(frozen=True)
class GridConfig:
    """Uniform grid on ``[x_min, x_max]``; ``x_max=None`` picks it from the energy guess."""

    x_min: float = 1e-3
    x_max: Optional[float] = None
    points: int = 20001

    def __post_init__(self):
        if not self.x_min > 0:
            raise ParameterError(f"x_min must be > 0, got {self.x_min}")
        if self.x_max is not None and not self.x_max > self.x_min:
            raise ParameterError(f"x_max must exceed x_min, got {self.x_max} <= {self.x_min}")
        if int(self.points) != self.points or self.points < 1000:
            raise ParameterError(f"points must be an integer >= 1000, got {self.points}")

    @classmethod
    def parse(cls, text: str) -> "GridConfig":
        """Build from ``"xmin:xmax:points"``; empty fields keep the defaults."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterError(f"grid must look like xmin:xmax:points, got {text!r}")
        kwargs = {}
        try:
            if parts[0]:
                kwargs["x_min"] = float(parts[0])
            if parts[1]:
                kwargs["x_max"] = float(parts[1])
            if parts[2]:
                kwargs["points"] = int(parts[2])
        except ValueError as exc:
            raise ParameterError(f"bad grid specification {text!r}: {exc}") from None
        return cls(**kwargs)

    def resolve_x_max(self, energy_guess: float) -> float:
        if self.x_max is not None:
            return float(self.x_max)
        return max(10.0, 3.0 * math.sqrt(max(energy_guess, 0.0)))


@dataclass(frozen=True)
class RadialProblem:
    """A confining radial problem ``-u'' + W(x) u = E u``."""

    potential: Callable
    q: QuantumNumbers
    energy_guess: float
    metadata: dict = field(default_factory=dict)

    @property
    def centrifugal(self):
        return effective_lambda(self.q)

    def effective_potential(self, x):
        x = np.asarray(x, dtype=float)
        return self.potential(x) + self.centrifugal.reduced_coeff / (x * x)


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """Converged eigenstate; ``u`` is normalized so that ``simpson(u**2, x) == 1``."""

    energy: float
    nodes: int
    x: np.ndarray
    u: np.ndarray
    match_defect: float
    problem: RadialProblem


def reduce_to_radial(source, q: QuantumNumbers, energy_guess: Optional[float] = None) -> RadialProblem:
    """Radial problem for a spiked-oscillator parameter set or a transform pair.

    The energy guess defaults to the bound-formula value, which is then used
    to seed the eigenvalue search.
    """
    if isinstance(source, SpikedOscParams):
        meta = {"alpha": source.alpha, "mu": source.mu, "lambda": source.lam, "beta": source.beta}
        if energy_guess is None:
            if source.beta == 2:
                energy_guess = sho_bound_energy(source, q).energy
            else:
                energy_guess = power_bound_energy(source, q).energy
        return RadialProblem(source.potential, q, float(energy_guess), meta)
    if isinstance(source, TransformPair):
        if energy_guess is None:
            energy_guess = general_bound_energy(source, q).energy
        return RadialProblem(source.potential, q, float(energy_guess), {})
    if callable(source):
        if energy_guess is None:
            raise ParameterError("an energy guess is required for a bare potential callable")
        return RadialProblem(source, q, float(energy_guess), {})
    raise ParameterError(f"cannot build a radial problem from {type(source).__name__}")


class _Shooter:
    """Grid buffers and shooting primitives for one problem."""

    def __init__(self, prob: RadialProblem, x: np.ndarray):
        self.prob = prob
        self.x = x
        self.h = x[1] - x[0]
        with np.errstate(all="ignore"):
            self.w = prob.effective_potential(x)
        if not np.all(np.isfinite(self.w)):
            raise SolverError("effective potential is not finite on the grid")
        # skip the core where the spike is too steep for the step; the state
        # is exponentially small there
        steep = self.h * self.h * self.w / 12.0 > _MAX_STEP_LOAD
        self.i0 = int(np.argmin(steep)) if steep[0] else 0
        if steep[self.i0] or self.i0 > x.size // 2:
            raise GridTooCoarse("effective potential is too steep for the grid step")
        self.i_start = self.i0
        self.inner = None
        if x[self.i0] < _INNER_RATIO * self.h:
            self._setup_inner()
        else:
            # local power law x**(nu + 1/2) of the solution regular at the
            # origin, with the potential frozen into the 1/x**2 coefficient
            x0, x1 = x[self.i0], x[self.i0 + 1]
            nu = math.sqrt(max(self.w[self.i0] * x0 * x0 + 0.25, 0.0))
            self.start = (1.0, (x1 / x0) ** (nu + 0.5))

    def _setup_inner(self):
        # Near the origin h/x is not small and, for Lambda ~ 0, the regular
        # and irregular solutions separate only logarithmically.  The stretch
        # up to i_start is therefore integrated in y = log x, where
        # u = sqrt(x) * phi and phi'' = [x**2 (W - E) + 1/4] phi, starting far
        # inside x_min so the leading power law is an accurate initial value.
        # The log grid hits x[i_start] and x[i_start + 1] exactly.
        x, h = self.x, self.h
        i_s = self.i0
        while x[i_s] < _INNER_RATIO * h:
            i_s += 1
        self.i_start = i_s
        gap = math.log(x[i_s + 1] / x[i_s])
        k = max(1, int(math.ceil(gap / _INNER_DY)))
        dy = gap / k
        m = int(math.ceil(math.log(x[i_s] / min(_INNER_DEEP, x[0])) / dy))
        ylog = math.log(x[i_s + 1]) - dy * np.arange(m + k, -1, -1)
        xlog = np.exp(ylog)
        xlog[-1], xlog[m] = x[i_s + 1], x[i_s]
        with np.errstate(all="ignore"):
            base = xlog**2 * self.prob.effective_potential(xlog) + 0.25
        steep = ~np.isfinite(base) | (dy * dy * base / 12.0 > _MAX_STEP_LOAD)
        j0 = int(np.nonzero(steep)[0][-1]) + 1 if steep.any() else 0
        if j0 >= m - 1:
            raise GridTooCoarse("effective potential is too steep near the origin")
        xlog, base = xlog[j0:], base[j0:]
        m -= j0
        nu = math.sqrt(max(base[0], 0.0))
        self.inner = (xlog, base, dy, (1.0, math.exp(nu * dy)), m, k)

    def _inner_solution(self, energy):
        xlog, base, dy, start, m, k = self.inner
        phi = numerov_march(base - energy * xlog**2, dy, *start)
        return xlog, np.sqrt(xlog) * phi

    def _outer_start(self, energy):
        if self.inner is None:
            return self.start
        _, u_in = self._inner_solution(energy)
        m, k = self.inner[4], self.inner[5]
        return u_in[m], u_in[m + k]

    def outward(self, energy, stop=None):
        stop = self.x.size if stop is None else stop
        y = np.zeros(stop)
        q = self.w[self.i_start:stop] - energy
        y[self.i_start:] = numerov_march(q, self.h, *self._outer_start(energy))
        return y

    def outward_full(self, energy, stop=None):
        """Outward solution with the near-origin stretch filled in."""
        y = self.outward(energy, stop)
        if self.inner is not None:
            xlog, u_in = self._inner_solution(energy)
            m = self.inner[4]
            sl = slice(int(np.searchsorted(self.x, xlog[0])), self.i_start)
            y[sl] = CubicSpline(np.log(xlog[: m + 1]), u_in[: m + 1])(np.log(self.x[sl]))
        return y

    def inward(self, energy, start):
        q = self.w[start:][::-1] - energy
        return numerov_march(q, self.h, 0.0, 1.0)[::-1]

    def count(self, energy):
        """Number of eigenvalues below `energy` (Sturm oscillation count)."""
        q = self.w[self.i_start:] - energy
        nodes = numerov_count(q, self.h, *self._outer_start(energy))
        if self.inner is not None:
            m = self.inner[4]
            nodes += count_sign_changes(self._inner_solution(energy)[1][: m + 1])
        return nodes

    def match_index(self, energy):
        allowed = np.nonzero(self.w < energy)[0]
        if allowed.size == 0:
            raise SolverError(f"no classically allowed region at E={energy}")
        return int(min(max(allowed[-1], 2), self.x.size - 3))

    def defect(self, energy, im):
        yo = self.outward(energy, stop=im + 2)
        yi = self.inward(energy, start=im - 1)
        lo = (yo[im + 1] - yo[im - 1]) / (2 * self.h * yo[im])
        li = (yi[2] - yi[0]) / (2 * self.h * yi[1])
        return lo - li

    def wavefunction(self, energy, im):
        yo = self.outward_full(energy, stop=im + 1)
        yi = self.inward(energy, start=im)
        u = np.concatenate([yo[:-1], yi * (yo[-1] / yi[0])])
        return u


def _bracket_state(shooter: _Shooter, n: int, guess: float, half_width: float = 2.0):
    lo, hi = guess - half_width, guess + half_width
    width = half_width
    for _ in range(60):
        c_lo = shooter.count(lo)
        if c_lo <= n:
            break
        width *= 2
        lo -= width
    else:
        raise SolverError(f"no energy window below state n={n} found near {guess}")
    width = half_width
    for _ in range(60):
        c_hi = shooter.count(hi)
        if c_hi > n:
            break
        width *= 2
        hi += width
    else:
        raise SolverError(f"window above {guess} contains no state with {n} nodes")
    return lo, hi


def _solve_on_grid(prob: RadialProblem, x: np.ndarray, tol: float):
    shooter = _Shooter(prob, x)
    n = prob.q.n
    lo, hi = _bracket_state(shooter, n, prob.energy_guess)
    while hi - lo > 1e-3 * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        if shooter.count(mid) <= n:
            lo = mid
        else:
            hi = mid

    im = shooter.match_index(0.5 * (lo + hi))
    d_lo, d_hi = shooter.defect(lo, im), shooter.defect(hi, im)
    if np.sign(d_lo) != np.sign(d_hi) and np.isfinite(d_lo) and np.isfinite(d_hi):
        energy = brentq(shooter.defect, lo, hi, args=(im,), xtol=tol * 1e-3, rtol=4 * np.finfo(float).eps)
    else:
        # a pole of the defect sits in the bracket; finish on the node count
        while hi - lo > tol * 1e-3:
            mid = 0.5 * (lo + hi)
            if shooter.count(mid) <= n:
                lo = mid
            else:
                hi = mid
        energy = 0.5 * (lo + hi)

    u = shooter.wavefunction(energy, im)
    nodes = count_sign_changes(u[1:-1])
    if nodes != n:
        raise SolverError(f"matched state at E={energy} has {nodes} nodes, expected {n}")
    norm = simpson(u * u, x=x)
    u = u / math.sqrt(norm)
    if u[np.argmax(np.abs(u) > 1e-8 * np.abs(u).max())] < 0:
        u = -u
    return energy, nodes, u, abs(shooter.defect(energy, im))


def solve_eigenvalue(
    prob: RadialProblem,
    grid: Optional[GridConfig] = None,
    tol: float = 1e-5,
    check_grid: bool = True,
) -> RadialSolution:
    """Eigenstate of `prob` with ``prob.q.n`` interior nodes.

    `tol` is the absolute energy accuracy target.  With `check_grid`, the
    problem is solved again with twice the step and a disagreement above
    ``10 * tol`` raises :class:`GridTooCoarse`.

    Examples
    --------
    >>> p = SpikedOscParams(lam=1, mu=10, alpha=1.9)
    >>> sol = solve_eigenvalue(reduce_to_radial(p, QuantumNumbers(0, 0, 2)))
    >>> round(sol.energy, 4)
    8.4854
    """
    grid = grid or GridConfig()
    points = int(grid.points)
    if points % 2 == 0:
        points += 1
    x_max = grid.resolve_x_max(prob.energy_guess)
    x = np.linspace(grid.x_min, x_max, points)
    try:
        energy, nodes, u, defect = _solve_on_grid(prob, x, tol)
        if check_grid:
            coarse, *_ = _solve_on_grid(prob, x[::2], tol)
            if abs(coarse - energy) > 10 * tol:
                raise GridTooCoarse(
                    f"doubling the step moves E by {abs(coarse - energy):.2e} > {10 * tol:.1e}; refine the grid"
                )
    except BoundError as exc:
        raise SolverError(str(exc)) from exc
    u.setflags(write=False)
    x.setflags(write=False)
    return RadialSolution(energy, nodes, x, u, defect, prob)


def solution_metadata(sol: RadialSolution) -> dict:
    q = sol.problem.q
    meta = {"energy": sol.energy, "n": q.n, "l": q.l, "N": q.dim}
    for key in ("alpha", "mu", "lambda"):
        meta[key] = sol.problem.metadata.get(key)
    return meta


def export_wavefunction(sol: RadialSolution, stream, fmt: str = "csv") -> None:
    """Write ``(x, u)`` samples to a text stream as CSV or JSON lines.

    CSV has a single ``x,u`` header row.  JSON lines start with one metadata
    object (energy, n, l, N, alpha, mu, lambda) followed by one ``{"x", "u"}``
    object per grid point.  Floats carry 17 significant digits.
    """
    if fmt == "csv":
        stream.write("x,u\n")
        for xi, ui in zip(sol.x, sol.u):
            stream.write(f"{xi:.17g},{ui:.17g}\n")
    elif fmt == "jsonl":
        stream.write(json.dumps(solution_metadata(sol)) + "\n")
        for xi, ui in zip(sol.x, sol.u):
            stream.write(f'{{"x": {xi:.17g}, "u": {ui:.17g}}}\n')
    else:
        raise ParameterError(f"unknown export format {fmt!r}; use 'csv' or 'jsonl'")
