import io
import json
import math

import numpy as np
import pytest
from scipy.integrate import simpson

from spiked_bounds.analytic import gk_energy, harmonic_energy
from spiked_bounds.core import ParameterError, QuantumNumbers, SpikedOscParams
from spiked_bounds.solver import (
    GridConfig,
    GridTooCoarse,
    count_sign_changes,
    export_wavefunction,
    numerov_count,
    numerov_march,
    reduce_to_radial,
    solve_eigenvalue,
)

X = np.array([0.1, 0.5, 1.0, 3.0])


def _oscillator(x):
    return x * x


def test_reduction_three_dimensions_s_wave_has_no_centrifugal_term():
    prob = reduce_to_radial(SpikedOscParams(1, 10, 1.9), QuantumNumbers(0, 0, 3))
    assert np.allclose(prob.effective_potential(X), X**2 + 10 / X**1.9, rtol=1e-15)


def test_reduction_adds_lambda_squared_minus_quarter():
    prob = reduce_to_radial(SpikedOscParams(1, 10, 2.1), QuantumNumbers(2, 1, 10))
    assert np.allclose(prob.effective_potential(X), X**2 + 10 / X**2.1 + 24.75 / X**2, rtol=1e-15)


def test_reduction_two_dimensions_is_attractive():
    prob = reduce_to_radial(_oscillator, QuantumNumbers(0, 0, 2), energy_guess=2.0)
    assert np.allclose(prob.effective_potential(X), X**2 - 0.25 / X**2, rtol=1e-15)


def test_reduction_needs_guess_for_bare_callable():
    with pytest.raises(ParameterError):
        reduce_to_radial(_oscillator, QuantumNumbers())


def test_reduction_seeds_from_bound():
    prob = reduce_to_radial(SpikedOscParams(1, 10, 1.9), QuantumNumbers(0, 0, 2))
    assert prob.energy_guess == pytest.approx(8.51190, abs=1e-5)
    assert prob.metadata == {"alpha": 1.9, "mu": 10.0, "lambda": 1.0, "beta": 2.0}


def test_numerov_march_reproduces_exponential():
    # y'' = y from y = exp(x)
    h = 1e-2
    x = np.arange(0, 2 + h / 2, h)
    y = numerov_march(np.ones_like(x), h, 1.0, math.exp(h))
    assert np.allclose(y, np.exp(x), rtol=1e-9)


def test_count_sign_changes_skips_zeros():
    assert count_sign_changes(np.array([0.0, 1.0, 0.0, -2.0, -1.0, 3.0])) == 2


@pytest.mark.parametrize(
    "alpha, q, expected",
    [(1.9, QuantumNumbers(0, 0, 2), 8.48538), (2.1, QuantumNumbers(2, 1, 5), 17.95544)],
)
def test_table_examples(alpha, q, expected):
    sol = solve_eigenvalue(reduce_to_radial(SpikedOscParams(1, 10, alpha), q))
    assert sol.energy == pytest.approx(expected, abs=5e-4)
    assert sol.nodes == q.n


def test_goldman_krivchenkov_example():
    q = QuantumNumbers(0, 0, 3)
    sol = solve_eigenvalue(reduce_to_radial(SpikedOscParams(1, 10, 2), q))
    assert sol.energy == pytest.approx(2 * (1 + math.sqrt(10.25)), abs=1e-5)
    assert sol.energy == pytest.approx(gk_energy(1, 10, q), abs=1e-5)


@pytest.mark.parametrize("dim", range(2, 11))
@pytest.mark.parametrize("n", range(3))
@pytest.mark.parametrize("l", range(3))
def test_pure_oscillator(n, l, dim):
    q = QuantumNumbers(n, l, dim)
    sol = solve_eigenvalue(reduce_to_radial(_oscillator, q, harmonic_energy(1, q)))
    assert sol.energy == pytest.approx(harmonic_energy(1, q), abs=1e-6)
    assert sol.nodes == n


def test_ground_state_shape_three_dimensions():
    q = QuantumNumbers(0, 0, 3)
    sol = solve_eigenvalue(reduce_to_radial(_oscillator, q, 3.0))
    exact = sol.x * np.exp(-sol.x**2 / 2)
    exact /= math.sqrt(simpson(exact**2, x=sol.x))
    assert np.max(np.abs(sol.u - exact)) < 1e-6
    assert count_sign_changes(sol.u[1:-1]) == 0


@pytest.mark.parametrize("alpha, n, l", [(1.9, 0, 0), (2.1, 2, 1)])
@pytest.mark.parametrize("dim", [2, 6, 10])
def test_normalization_and_nodes(alpha, n, l, dim):
    sol = solve_eigenvalue(reduce_to_radial(SpikedOscParams(1, 10, alpha), QuantumNumbers(n, l, dim)))
    assert simpson(sol.u**2, x=sol.x) == pytest.approx(1.0, abs=1e-8)
    assert count_sign_changes(sol.u[1:-1]) == n
    assert sol.match_defect < 1e-6
    assert not sol.u.flags.writeable


@pytest.mark.parametrize("dim", range(2, 11))
def test_grid_convergence_on_table_one(dim):
    prob = reduce_to_radial(SpikedOscParams(1, 10, 1.9), QuantumNumbers(0, 0, dim))
    coarse = solve_eigenvalue(prob, GridConfig(points=20001), check_grid=False).energy
    fine = solve_eigenvalue(prob, GridConfig(points=40001), check_grid=False).energy
    assert abs(coarse - fine) <= 1e-6


def test_grid_too_coarse_detected():
    prob = reduce_to_radial(SpikedOscParams(1, 10, 2.1), QuantumNumbers(2, 1, 10))
    with pytest.raises(GridTooCoarse):
        solve_eigenvalue(prob, GridConfig(x_max=40, points=1001), tol=1e-7)


def test_steep_spike_core_is_skipped():
    # alpha = 4 makes h**2 W / 12 huge at x_min; the core holds no probability
    p, q = SpikedOscParams(1, 10, 4), QuantumNumbers(1, 0, 3)
    sol = solve_eigenvalue(reduce_to_radial(p, q))
    assert sol.nodes == 1
    assert sol.u[0] == 0.0


def test_numerov_count_agrees_with_stored_march():
    x = np.linspace(0.01, 6, 3000)
    q = x * x - 11.0
    y = numerov_march(q, x[1] - x[0], 0.0, 1e-6)
    assert numerov_count(q, x[1] - x[0], 0.0, 1e-6) == count_sign_changes(y)


@pytest.mark.parametrize("n", range(4))
def test_steep_quartic_tail_keeps_nodes(n):
    # x**4 over a wide box overflows by e**900; rescaling must not erase nodes
    def quartic(x):
        return x**4 + x**-4

    q = QuantumNumbers(n, 0, 2)
    lower = solve_eigenvalue(reduce_to_radial(quartic, q, energy_guess=10.0 * (n + 1)), GridConfig(x_max=14))
    assert lower.nodes == n
    if n:
        below = solve_eigenvalue(
            reduce_to_radial(quartic, QuantumNumbers(n - 1, 0, 2), energy_guess=10.0 * n), GridConfig(x_max=14)
        )
        assert below.energy < lower.energy


def test_window_widens_for_a_poor_guess():
    q = QuantumNumbers(2, 0, 3)
    sol = solve_eigenvalue(reduce_to_radial(_oscillator, q, energy_guess=40.0))
    assert sol.energy == pytest.approx(harmonic_energy(1, q), abs=1e-6)


@pytest.mark.parametrize(
    "kwargs",
    [dict(x_min=0), dict(x_min=1, x_max=0.5), dict(points=999), dict(points=1000.5)],
)
def test_grid_config_validation(kwargs):
    with pytest.raises(ParameterError):
        GridConfig(**kwargs)


def test_grid_config_parse():
    assert GridConfig.parse("1e-4:12:30001") == GridConfig(1e-4, 12.0, 30001)
    assert GridConfig.parse("::5001") == GridConfig(points=5001)
    with pytest.raises(ParameterError):
        GridConfig.parse("1:2")
    with pytest.raises(ParameterError):
        GridConfig.parse("a:b:c")


@pytest.fixture(scope="module")
def table2_state():
    return solve_eigenvalue(reduce_to_radial(SpikedOscParams(1, 10, 2.1), QuantumNumbers(2, 1, 4)))


def test_export_csv(table2_state):
    buf = io.StringIO()
    export_wavefunction(table2_state, buf, "csv")
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x,u"
    assert len(lines) == table2_state.x.size + 1
    x, u = map(float, lines[1].split(","))
    assert x == table2_state.x[0] and u == table2_state.u[0]
    # 17 significant digits round-trip exactly
    assert np.array_equal(np.loadtxt(io.StringIO(buf.getvalue()), delimiter=",", skiprows=1)[:, 1], table2_state.u)


def test_export_jsonl(table2_state):
    buf = io.StringIO()
    export_wavefunction(table2_state, buf, "jsonl")
    lines = buf.getvalue().splitlines()
    meta = json.loads(lines[0])
    assert meta == {"energy": table2_state.energy, "n": 2, "l": 1, "N": 4, "alpha": 2.1, "mu": 10.0, "lambda": 1.0}
    rows = [json.loads(line) for line in lines[1:]]
    assert len(rows) == table2_state.x.size
    assert set(rows[5]) == {"x", "u"}
    u = np.array([r["u"] for r in rows])
    assert count_sign_changes(u[1:-1]) == 2


def test_export_rejects_unknown_format(table2_state):
    with pytest.raises(ParameterError):
        export_wavefunction(table2_state, io.StringIO(), "xml")
