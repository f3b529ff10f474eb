import numpy as np
import pytest

from src.engine.weyl import weyl_matrix
from src.problem.models import InvolutionProblem, Variant
from src.spectral.characteristic import char_components, char_delta, characteristic_set, cramer_defect
from src.spectral.oracle import oracle_determinant, oracle_spectrum


def test_free_values_at_zero(zero_problem):
    values = char_components(characteristic_set(zero_problem), 0.0)
    assert values == pytest.approx((-1.0, 0.5, -0.5, -0.5, 0.5), abs=1e-10)


@pytest.mark.parametrize("lam", [2.0 + 1.0j, -15.0 + 3.0j, 40.0])
def test_free_closed_forms(zero_problem, lam):
    rho = np.sqrt(lam)
    delta = -np.cos(rho) * np.sinh(rho) / rho
    diagonal = 0.5 * (np.cos(rho) * np.cosh(rho) - np.sin(rho) * np.sinh(rho))
    off = -0.5 * (np.sin(rho) * np.sinh(rho) + np.cos(rho) * np.cosh(rho))
    values = char_components(characteristic_set(zero_problem), lam)
    assert np.allclose(values, [delta, diagonal, off, off, diagonal], rtol=1e-8, atol=1e-10)


def test_scaled_values_carry_sigma(linear_problem):
    ctx = characteristic_set(linear_problem)
    lambdas = np.array([10.0 + 1.0j, 20000.0j])
    scaled, sigma = ctx.scaled_components(lambdas)
    assert sigma[0] == 0.0 and sigma[1] > 0
    plain = ctx.components(lambdas[:1])
    assert np.allclose(scaled[0], plain[0])


def test_cramer_identity(linear_problem):
    ctx = characteristic_set(linear_problem)
    for lam in (3.0 + 2.0j, -20.0 - 5.0j, 50.0j):
        assert cramer_defect(ctx, lam, weyl_matrix(ctx.matrix, lam)) < 1e-8


def test_reflection_keeps_delta_and_swaps_components(complex_problem):
    direct = characteristic_set(complex_problem)
    reflected = characteristic_set(complex_problem.reflected())
    lambdas = np.array([1.0 + 1.0j, -7.0 + 2.0j, 25.0 - 4.0j])
    a = direct.components(lambdas)
    b = reflected.components(lambdas)
    assert np.allclose(a[:, 0], b[:, 0], rtol=1e-8)
    assert np.allclose(a[:, 1], b[:, 4], rtol=1e-8)
    assert np.allclose(a[:, 2], b[:, 3], rtol=1e-8)


def test_oracle_spectrum_is_zero_set():
    alpha = 0.3
    values = oracle_spectrum(alpha, 6)
    assert np.all(np.abs(oracle_determinant(alpha, values, Variant.L, scaled=True)) < 1e-10)


def test_integrated_delta_vanishes_on_oracle_spectrum():
    ctx = characteristic_set(InvolutionProblem(alpha=0.3))
    for lam in oracle_spectrum(0.3, 4):
        scale = np.abs(ctx.components([lam + 1.0])[0, 0])
        assert abs(char_delta(ctx, lam)) < 1e-8 * max(1.0, scale)


def test_free_delta_on_disc_grid(zero_problem):
    rng = np.random.default_rng(11)
    radius = 100.0 * np.sqrt(rng.uniform(0.0, 1.0, 50))
    lambdas = radius * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 50))
    rho = np.sqrt(lambdas)
    expected = -np.cos(rho) * np.sinh(rho) / rho
    actual = characteristic_set(zero_problem).components(lambdas)[:, 0]
    assert np.allclose(actual, expected, rtol=1e-8, atol=1e-12)


def test_real_data_delta_commutes_with_conjugation(linear_problem):
    ctx = characteristic_set(linear_problem)
    for lam in (3.0 + 2.0j, -20.0 - 5.0j, 50.0j, 7.5 - 0.1j):
        assert char_delta(ctx, np.conj(lam)) == pytest.approx(np.conj(char_delta(ctx, lam)), rel=1e-9)
