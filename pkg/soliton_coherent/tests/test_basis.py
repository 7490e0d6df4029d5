import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from soliton_coherent.basis import (LadderDirection, NumericalRangeError, Representation, UniformGrid,
                                    basis_momentum, basis_position, gauss_hermite, hermite_eval,
                                    ladder_apply, ladder_matrix, momentum_gram, momentum_jacobi,
                                    momentum_table, normalized_hermite_table, position_table, synthesize,
                                    trapezoid_rule)
from soliton_coherent.utils import InvalidParameterError


def test_hermite_low_orders():
    assert hermite_eval(0, 0.3) == 1.0
    assert hermite_eval(1, 0.3) == pytest.approx(0.6)
    assert hermite_eval(3, 1.0) == pytest.approx(-4.0)
    np.testing.assert_allclose(hermite_eval(4, np.array([0.0, 1.0])), [12.0, -20.0])


def test_hermite_overflow_is_reported():
    with pytest.raises(NumericalRangeError):
        hermite_eval(200, 1e3)


def test_hermite_rejects_negative_order():
    with pytest.raises(InvalidParameterError):
        hermite_eval(-1, 0.0)


def test_hermite_ten_matches_coefficient_sum():
    # H_10(u) = 10! sum_m (-1)^m (2u)^(10-2m) / (m! (10-2m)!)
    u = 0.5
    expected = sum((-1) ** m * math.factorial(10) / (math.factorial(m) * math.factorial(10 - 2 * m))
                   * (2.0 * u) ** (10 - 2 * m) for m in range(6))
    assert hermite_eval(10, u) == pytest.approx(expected, rel=1e-12)


def test_normalized_table_matches_hermite():
    u = np.linspace(-2.0, 2.0, 9)
    table = normalized_hermite_table(10, u)
    for n in range(11):
        expected = hermite_eval(n, u) / math.sqrt(2.0 ** n * math.factorial(n))
        np.testing.assert_allclose(table[n], expected, rtol=1e-12, atol=1e-12)


def test_momentum_basis_is_orthonormal():
    np.testing.assert_allclose(momentum_gram(np.ones_like, 12), np.eye(13), atol=1e-12)


def test_momentum_basis_orthonormal_to_thirty():
    np.testing.assert_allclose(momentum_gram(np.ones_like, 30, order=80), np.eye(31), atol=1e-10)


def test_momentum_basis_unit_norm_on_trapezoid():
    rule = trapezoid_rule(-10.0, 10.0, 2001)
    for n in (0, 3, 8):
        values = basis_momentum(n, rule.nodes, t=0.7)
        assert rule.integrate(np.abs(values) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_generating_function_identity():
    z = 0.4 - 0.3j
    p = np.linspace(-3.0, 3.0, 13)
    coefficients = np.array([z ** n / math.sqrt(math.factorial(n)) for n in range(40)])
    series = coefficients @ momentum_table(39, p)
    closed = (2.0 / np.pi) ** 0.25 * np.exp(-p ** 2 + 2.0 * z * p - z ** 2 / 2.0)
    np.testing.assert_allclose(series, closed, rtol=1e-10, atol=1e-13)


@pytest.mark.parametrize("z", [0.3, 0.5 + 0.4j, -1.1j])
def test_generating_function_to_forty(z):
    p = np.linspace(-4.0, 4.0, 81)
    coefficients = np.array([z ** n / math.sqrt(math.factorial(n)) for n in range(41)])
    series = coefficients @ momentum_table(40, p)
    closed = (2.0 / np.pi) ** 0.25 * np.exp(-p ** 2 + 2.0 * z * p - z ** 2 / 2.0)
    np.testing.assert_allclose(series, closed, rtol=0.0, atol=1e-9)


@pytest.mark.parametrize("t", [0.0, 0.5])
def test_position_basis_solves_free_schrodinger(grid, t):
    # i d/dt psi = -d^2/dx^2 psi; fourth-order central difference in t
    h = 1e-3
    rows = [position_table(6, grid.x, t + k * h) for k in (-2, -1, 1, 2)]
    dpsi_dt = (rows[0] - 8.0 * rows[1] + 8.0 * rows[2] - rows[3]) / (12.0 * h)
    psi = position_table(6, grid.x, t)
    residual = 1j * dpsi_dt + grid.derivative(psi, 2)
    assert np.max(np.abs(residual)) / np.max(np.abs(psi)) <= 1e-5


@pytest.mark.parametrize("t", [0.0, 0.3])
def test_position_basis_is_fourier_transform(t):
    rule = trapezoid_rule(-12.0, 12.0, 2401)
    x = np.array([-2.5, -0.3, 0.0, 1.1, 4.0])
    momentum = momentum_table(6, rule.nodes, t)
    kernel = np.exp(1j * np.outer(rule.nodes, x)) / np.sqrt(2.0 * np.pi)
    transformed = (momentum * rule.weights) @ kernel
    np.testing.assert_allclose(position_table(6, x, t), transformed, atol=1e-12)


def test_position_basis_orthonormal_on_grid(grid):
    table = position_table(10, grid.x, t=0.5)
    gram = np.array([[grid.inner(a, b) for b in table] for a in table])
    np.testing.assert_allclose(gram, np.eye(11), atol=1e-10)


def test_basis_position_single_row(grid):
    np.testing.assert_allclose(basis_position(4, grid.x), position_table(4, grid.x)[4])


def test_synthesize_both_representations():
    p = np.linspace(-2.0, 2.0, 5)
    coeffs = np.array([0.0, 1.0, 0.0, 2.0])
    np.testing.assert_allclose(synthesize(coeffs, p, Representation.MOMENTUM),
                               basis_momentum(1, p) + 2.0 * basis_momentum(3, p))
    np.testing.assert_allclose(synthesize(coeffs, p, "position"),
                               basis_position(1, p) + 2.0 * basis_position(3, p))


def test_momentum_matrix_is_the_jacobi_matrix():
    jacobi = momentum_jacobi(8).to_dense()
    assert jacobi[0, 1] == pytest.approx(0.5)
    assert jacobi[3, 4] == pytest.approx(1.0)
    np.testing.assert_allclose(momentum_gram(lambda p: p, 8), jacobi, atol=1e-12)
    np.testing.assert_allclose(momentum_jacobi(8, sign=-1).to_dense(), -jacobi)


def test_momentum_jacobi_needs_two_states():
    with pytest.raises(InvalidParameterError):
        momentum_jacobi(0)


def test_ladder_matrix_commutator():
    a = ladder_matrix(LadderDirection.LOWER, 12)
    adag = ladder_matrix(LadderDirection.RAISE, 12)
    commutator = a @ adag - adag @ a
    np.testing.assert_allclose(commutator[:11, :11], np.eye(11), atol=1e-12)


@settings(deadline=None, max_examples=40)
@given(arrays(np.float64, st.integers(min_value=2, max_value=12), elements=st.floats(-5.0, 5.0)))
def test_number_operator_from_ladders(coeffs):
    lowered = ladder_apply(LadderDirection.LOWER, coeffs)
    number = ladder_apply(LadderDirection.RAISE, lowered)
    assert len(number) == len(coeffs) + 1
    np.testing.assert_allclose(number[:-1], np.arange(len(coeffs)) * coeffs, atol=1e-12)
    assert number[-1] == 0


def test_raise_without_extension_keeps_length():
    assert len(ladder_apply("raise", np.ones(5), extend=False)) == 5


@pytest.mark.parametrize("n", range(21))
def test_lower_after_raise_is_number_plus_one(n):
    e_n = np.zeros(n + 1)
    e_n[n] = 1.0
    result = ladder_apply("lower", ladder_apply("raise", e_n))
    np.testing.assert_allclose(result[: n + 1], (n + 1) * e_n, atol=1e-12)
    assert result[n + 1] == 0


def test_gauss_hermite_moments():
    rule = gauss_hermite(20)
    assert rule.integrate(np.ones(20)) == pytest.approx(np.sqrt(np.pi), rel=1e-14)
    assert rule.integrate(rule.nodes ** 4) == pytest.approx(0.75 * np.sqrt(np.pi), rel=1e-13)
    assert rule.integrate(rule.nodes ** 3) == pytest.approx(0.0, abs=1e-13)
    np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1])


def test_gauss_hermite_order_range():
    assert gauss_hermite(1).weights[0] == pytest.approx(np.sqrt(np.pi))
    assert gauss_hermite(200).weights.shape == (200,)
    with pytest.raises(InvalidParameterError):
        gauss_hermite(0)
    with pytest.raises(InvalidParameterError):
        gauss_hermite(201)


def test_uniform_grid_parse_and_derivative():
    grid = UniformGrid.parse("-20:20:1024")
    assert str(grid) == "-20:20:1024"
    values = np.exp(-grid.x ** 2)
    np.testing.assert_allclose(grid.derivative(values), -2.0 * grid.x * values, atol=1e-10)
    np.testing.assert_allclose(grid.derivative(values, 2), (4.0 * grid.x ** 2 - 2.0) * values, atol=1e-9)
    assert grid.integrate(values) == pytest.approx(np.sqrt(np.pi), rel=1e-12)


@pytest.mark.parametrize("text", ["-1:1", "a:b:c", "1:-1:10", "0:1:3"])
def test_uniform_grid_rejects_malformed(text):
    with pytest.raises(InvalidParameterError):
        UniformGrid.parse(text)
