import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spiked_bounds.analytic import gk_energy, harmonic_energy
from spiked_bounds.core import ParameterError, QuantumNumbers


@pytest.mark.parametrize(
    "lam, mu, q, expected",
    [
        (1, 0, QuantumNumbers(0, 0, 3), 3.0),
        (1, 10, QuantumNumbers(2, 1, 3), 17.0),
        (1, 10, QuantumNumbers(0, 0, 2), 2 + 2 * math.sqrt(10)),
    ],
)
def test_gk_energy_examples(lam, mu, q, expected):
    assert gk_energy(lam, mu, q) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize(
    "lam, q, expected",
    [(1, QuantumNumbers(0, 0, 3), 3.0), (4, QuantumNumbers(1, 0, 3), 14.0), (1, QuantumNumbers(0, 0, 2), 2.0)],
)
def test_harmonic_energy_examples(lam, q, expected):
    assert harmonic_energy(lam, q) == pytest.approx(expected, abs=1e-14)


def test_harmonic_matches_three_dimensional_textbook_form():
    # sqrt(lam) (4n + 2l + 3) in three dimensions
    for n in range(4):
        for l in range(4):
            assert harmonic_energy(2.5, QuantumNumbers(n, l, 3)) == pytest.approx(math.sqrt(2.5) * (4 * n + 2 * l + 3))


def test_rejects_bad_couplings():
    with pytest.raises(ParameterError):
        gk_energy(0, 1, QuantumNumbers())
    with pytest.raises(ParameterError):
        gk_energy(1, -1, QuantumNumbers())


quantum = st.builds(QuantumNumbers, st.integers(0, 10), st.integers(0, 10), st.integers(2, 12))
couplings = st.floats(0.01, 100)


@given(couplings, couplings, quantum)
def test_monotone_in_every_argument(lam, mu, q):
    e = gk_energy(lam, mu, q)
    assert gk_energy(lam, mu * 1.1, q) > e
    assert gk_energy(lam, mu, QuantumNumbers(q.n + 1, q.l, q.dim)) > e
    assert gk_energy(lam, mu, QuantumNumbers(q.n, q.l + 1, q.dim)) > e
    assert gk_energy(lam, mu, QuantumNumbers(q.n, q.l, q.dim + 1)) > e


@given(couplings, couplings, st.floats(0.01, 100), quantum)
def test_scaling_in_lambda(lam, mu, c, q):
    assert gk_energy(c * lam, mu, q) == pytest.approx(math.sqrt(c) * gk_energy(lam, mu, q), rel=1e-14)


@given(couplings, quantum)
def test_mu_zero_is_harmonic(lam, q):
    assert gk_energy(lam, 0.0, q) == harmonic_energy(lam, q)


@given(couplings, couplings, st.integers(0, 10), st.integers(0, 10), st.integers(4, 12))
def test_dimension_shift_identity(lam, mu, n, l, dim):
    assert gk_energy(lam, mu, QuantumNumbers(n, l, dim)) == gk_energy(lam, mu, QuantumNumbers(n, l + 1, dim - 2))
