import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spiked_bounds.core import (
    BoundDirection,
    ParameterError,
    QuantumNumbers,
    SpikedOscParams,
    classify_direction,
    convexity_sign,
    effective_lambda,
)


@pytest.mark.parametrize(
    "n, l, dim, lam_eff, coeff",
    [(0, 0, 3, 0.5, 0.0), (0, 0, 2, 0.0, -0.25), (2, 1, 10, 5.0, 24.75)],
)
def test_effective_lambda_examples(n, l, dim, lam_eff, coeff):
    c = effective_lambda(QuantumNumbers(n, l, dim))
    assert c.lambda_eff == lam_eff
    assert c.reduced_coeff == coeff


@pytest.mark.parametrize("n, l, dim", [(-1, 0, 3), (0, -1, 3), (0, 0, 1), (0, 0, 2.5), (0.5, 0, 3)])
def test_quantum_numbers_rejects_bad_values(n, l, dim):
    with pytest.raises(ParameterError):
        QuantumNumbers(n, l, dim)


def test_integral_floats_accepted():
    assert QuantumNumbers(1.0, 2.0, 4.0) == QuantumNumbers(1, 2, 4)


@given(st.integers(0, 50), st.integers(2, 50))
def test_effective_lambda_nonnegative_and_increasing(l, dim):
    base = effective_lambda(QuantumNumbers(0, l, dim)).lambda_eff
    assert base >= 0
    assert effective_lambda(QuantumNumbers(0, l + 1, dim)).lambda_eff > base
    assert effective_lambda(QuantumNumbers(0, l, dim + 1)).lambda_eff > base


@pytest.mark.parametrize("field", ["lam", "mu", "alpha", "beta"])
@pytest.mark.parametrize("value", [0.0, -1.0, float("nan"), float("inf")])
def test_spiked_params_validation(field, value):
    with pytest.raises(ParameterError):
        SpikedOscParams(**{field: value})


EXPECTED_DIRECTION = {
    (1, 1): BoundDirection.LOWER,
    (0, 1): BoundDirection.LOWER,
    (1, 0): BoundDirection.LOWER,
    (-1, -1): BoundDirection.UPPER,
    (0, -1): BoundDirection.UPPER,
    (-1, 0): BoundDirection.UPPER,
    (0, 0): BoundDirection.EXACT,
    (1, -1): BoundDirection.NO_GUARANTEE,
    (-1, 1): BoundDirection.NO_GUARANTEE,
}


def test_classify_direction_exhaustive():
    for g, f in itertools.product((-1, 0, 1), repeat=2):
        assert classify_direction(g, f) is EXPECTED_DIRECTION[g, f]


def test_classify_direction_rejects_non_signs():
    with pytest.raises(ParameterError):
        classify_direction(2, 0)


@pytest.mark.parametrize("exponent", [0.5, 1.0, 1.9, 2.0, 2.1, 3.0, 4.0])
def test_power_convexity_rule_matches_finite_differences(exponent):
    # second difference of u -> u**(exponent/2) at a few sample points
    h = 1e-3
    signs = set()
    for u in (0.3, 1.0, 4.0):
        d2 = ((u + h) ** (exponent / 2) - 2 * u ** (exponent / 2) + (u - h) ** (exponent / 2)) / h**2
        signs.add(0 if abs(d2) < 1e-6 else (1 if d2 > 0 else -1))
    assert signs == {convexity_sign(exponent)}
