import numpy as np
import pytest
from pydantic import ValidationError

from soliton_coherent.basis import UniformGrid
from soliton_coherent.darboux import (BasisCombination, PlaneWave, apply_L, apply_L_plus, bound_states,
                                      check_factorization, continuum_residual, eta_family, eta_n, gram,
                                      momentum_apply, normalization, phi_p, rayleigh_quotients,
                                      soliton_potential, transformation_function, transformed_basis,
                                      verify_darboux, xi1_family, xi1_n)
from soliton_coherent.models import SolitonSpec
from soliton_coherent.utils import InvalidParameterError


def test_single_soliton_potential(grid, one_soliton):
    potential = soliton_potential(one_soliton, grid)
    np.testing.assert_allclose(potential, -2.0 / np.cosh(grid.x) ** 2, atol=1e-10)


def test_potential_at_origin():
    grid = UniformGrid.parse("-10:10:401")
    potential = soliton_potential(SolitonSpec(alphas=(1.0,)), grid)
    assert potential[200] == pytest.approx(-2.0)


def test_two_soliton_potential(grid, two_soliton):
    np.testing.assert_allclose(soliton_potential(two_soliton, grid), -6.0 / np.cosh(grid.x) ** 2, atol=1e-9)


def test_shifted_soliton_is_translated(grid):
    shifted = SolitonSpec(alphas=(1.0,), shifts=(1.5,))
    np.testing.assert_allclose(soliton_potential(shifted, grid), -2.0 / np.cosh(grid.x + 1.5) ** 2, atol=1e-10)


def test_potential_is_time_independent(grid, two_soliton):
    np.testing.assert_array_equal(soliton_potential(two_soliton, grid, t=0.8), soliton_potential(two_soliton, grid))


def test_alphas_must_increase():
    with pytest.raises(ValidationError):
        SolitonSpec(alphas=(2.0, 1.0))


def test_momentum_apply():
    np.testing.assert_allclose(momentum_apply(np.array([1.0, 0.0])), [0.0, 0.5, 0.0])


def test_seeds_are_annihilated(grid, two_soliton):
    for j in (1, 2):
        seed = transformation_function(two_soliton, j)
        values = apply_L(two_soliton, seed, grid)
        scale = np.max(np.abs(seed.derivatives(grid.x, 0)))
        assert np.max(np.abs(values)) / scale <= 1e-10


def test_analytic_and_spectral_derivatives_agree(grid, one_soliton):
    state = BasisCombination.single(3)
    exact = apply_L(one_soliton, state, grid)
    spectral = apply_L(one_soliton, state.derivatives(grid.x, 0)[0], grid)
    np.testing.assert_allclose(spectral, exact, atol=1e-9)


def test_lowest_state_under_single_soliton(grid, one_soliton):
    expected = (2.0 * np.pi) ** -0.25 * (-grid.x / 2.0 - np.tanh(grid.x)) * np.exp(-grid.x ** 2 / 4.0)
    np.testing.assert_allclose(apply_L(one_soliton, BasisCombination.single(0), grid), expected, atol=1e-12)


def test_single_soliton_bound_state(grid, one_soliton):
    states = bound_states(one_soliton, grid)
    assert states.shape == (1, grid.points)
    np.testing.assert_allclose(states[0], 1.0 / (np.sqrt(2.0) * np.cosh(grid.x)), atol=1e-10)


def test_two_soliton_bound_states(grid, two_soliton):
    states = bound_states(two_soliton, grid)
    x = grid.x
    np.testing.assert_allclose(np.abs(states[0]), np.abs(np.sqrt(1.5) * np.tanh(x) / np.cosh(x)), atol=1e-9)
    np.testing.assert_allclose(states[1], np.sqrt(0.75) / np.cosh(x) ** 2, atol=1e-9)
    np.testing.assert_allclose(rayleigh_quotients(two_soliton, grid), [-1.0, -4.0], atol=1e-6)


def test_bound_state_phase(grid, one_soliton):
    later = bound_states(one_soliton, grid, t=0.5)
    np.testing.assert_allclose(later, bound_states(one_soliton, grid) * np.exp(0.5j), atol=1e-14)


def test_continuum_states(grid, two_soliton):
    assert continuum_residual(two_soliton, 1.3, grid) <= 1e-8
    state = phi_p(two_soliton, 0.7, grid)
    # reflectionless: unit modulus (up to (2 pi)^-1/2) far from the solitons
    assert abs(state[0]) == pytest.approx((2.0 * np.pi) ** -0.5, rel=1e-8)
    assert abs(state[-1]) == pytest.approx((2.0 * np.pi) ** -0.5, rel=1e-8)
    np.testing.assert_allclose(normalization(two_soliton, [0.0, 1.0]), [2.0, np.sqrt(10.0)])


def test_plane_wave_derivatives():
    rows = PlaneWave(2.0).derivatives(np.array([0.0]), 2)
    np.testing.assert_allclose(rows[:, 0], np.array([1.0, 2.0j, -4.0]) / np.sqrt(2.0 * np.pi))


def test_spectral_families_are_biorthogonal(grid, two_soliton):
    phi = transformed_basis(two_soliton, 4, grid)
    eta = eta_family(two_soliton, 4, grid)
    xi = xi1_family(two_soliton, 4, grid)
    np.testing.assert_allclose(gram(grid, eta, phi), np.eye(5), atol=1e-6)
    np.testing.assert_allclose(gram(grid, xi, xi), np.eye(5), atol=1e-6)
    np.testing.assert_allclose(eta_n(two_soliton, 2, grid), eta[2])
    np.testing.assert_allclose(xi1_n(two_soliton, 3, grid), xi[3])


def test_eta_index_limit(grid, one_soliton):
    with pytest.raises(InvalidParameterError):
        eta_n(one_soliton, 21, grid)
    with pytest.raises(InvalidParameterError):
        xi1_n(one_soliton, 21, grid)


def test_l_plus_annihilates_bound_states(grid, two_soliton):
    residual = apply_L_plus(two_soliton, bound_states(two_soliton, grid), grid)
    assert max(grid.norm(row) for row in residual) <= 1e-6


def test_factorization_table(grid, one_soliton):
    table = check_factorization(one_soliton, 6, grid)
    assert list(table.columns) == ["n", "lplus_l", "l_lplus", "intertwining"]
    assert table["lplus_l"].max() <= 1e-6
    assert table["l_lplus"].max() <= 1e-6
    assert table["intertwining"].max() <= 1e-5
    with pytest.raises(InvalidParameterError):
        check_factorization(one_soliton, 13, grid)


@pytest.mark.slow
@pytest.mark.parametrize("alphas", [(1.0,), (1.0, 2.0)])
def test_darboux_suite(grid, alphas):
    checks = verify_darboux(SolitonSpec(alphas=alphas), 8, 1e-6, grid)
    failed = [(c.name, c.max_residual) for c in checks if not c.passed]
    assert not failed
    assert len(checks) == 17
