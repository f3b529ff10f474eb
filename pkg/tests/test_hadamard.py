import numpy as np
import pytest

from src.engine.weyl import weyl_matrix
from src.errors import UsageError
from src.hadamard.product import (
    build_product,
    evaluate_product,
    evaluate_with_bound,
    fit_tail,
    ray_limit_constant,
    reconstructed_weyl,
)
from src.problem.coefficients import CoefficientFunction
from src.problem.geometry import sector_geometry
from src.problem.models import InvolutionProblem, Variant
from src.problem.reduction import reduce_to_matrix
from src.spectral.characteristic import characteristic_set
from src.spectral.eigen import tracked_spectrum
from src.spectral.oracle import oracle_eigenvalues, oracle_spectrum
from tests.conftest import spectrum_of

GEOMETRY = sector_geometry((1.0, -1.0))


def free_delta(lam):
    rho = np.sqrt(complex(lam))
    return -np.cos(rho) * np.sinh(rho) / rho


@pytest.fixture(scope="module")
def free_spectrum():
    return spectrum_of(oracle_spectrum(0.0, 500))


@pytest.fixture(scope="module")
def free_product(free_spectrum):
    return build_product(free_spectrum, GEOMETRY)


def within_bars(first, second) -> bool:
    return abs(first.value - second.value) <= first.error + second.error + 1e-12


def test_constant_for_free_problem(free_product):
    assert abs(free_product.constant + 1.0) <= free_product.constant_error + 1e-12
    assert free_product.constant_error < 1e-3
    assert free_product.truncation == 500
    assert evaluate_product(free_product, 0.0) == pytest.approx(free_product.constant, rel=1e-12)


def test_constant_does_not_depend_on_ray(free_spectrum):
    limits = [ray_limit_constant(free_spectrum, Variant.L, GEOMETRY, ray_index=index) for index in range(4)]
    for limit in limits:
        assert abs(limit.value + 1.0) <= limit.error + 1e-12
        assert within_bars(limit, limits[0])


def test_truncation_keeps_constant(free_spectrum, free_product):
    small = build_product(free_spectrum, GEOMETRY, truncation=50)
    assert small.truncation == 50
    assert abs(small.constant - free_product.constant) <= small.constant_error + free_product.constant_error + 1e-12


def test_stored_zero_gives_exact_zero(free_product, free_spectrum):
    lam = free_spectrum.values()[7]
    assert evaluate_product(free_product, lam) == 0
    assert evaluate_with_bound(free_product, lam) == (0j, 0.0)


def test_matches_closed_form_on_disk(free_product):
    rng = np.random.default_rng(3)
    points = 50.0 * np.sqrt(rng.uniform(0.01, 1.0, 50)) * np.exp(2j * np.pi * rng.uniform(size=50))
    values = free_product.product.values
    points = [lam for lam in points if np.min(np.abs(values - lam)) > 0.5]
    for lam in points:
        assert abs(evaluate_product(free_product, lam) / free_delta(lam) - 1.0) < 1e-2
    assert abs(evaluate_product(free_product, -5.0) / free_delta(-5.0) - 1.0) < 1e-2


def test_error_decreases_with_truncation(free_spectrum):
    lam = -5.0 + 3.0j
    errors = []
    for count in (125, 250, 500):
        h = build_product(free_spectrum, GEOMETRY, truncation=count, tail=False, constant=-1.0)
        errors.append(abs(evaluate_product(h, lam) / free_delta(lam) - 1.0))
    assert errors[0] > errors[1] > errors[2]


def test_tail_phases_follow_branches(free_spectrum):
    model = fit_tail(free_spectrum.values(), (1.0, -1.0))
    assert len(model.branches) == 2
    residues = sorted(abs(np.sin(branch.phase.real)) for branch in model.branches)
    assert residues == pytest.approx([0.0, 1.0], abs=1e-8)


def test_truncation_larger_than_spectrum(free_spectrum):
    with pytest.raises(UsageError):
        build_product(free_spectrum, GEOMETRY, truncation=1000)


def test_reconstructed_weyl_requires_all_products(free_product):
    with pytest.raises(UsageError):
        reconstructed_weyl({Variant.L: free_product}, 1.0 + 1.0j)


@pytest.mark.slow
def test_reconstruction_for_linear_coefficients():
    problem = InvolutionProblem(alpha=0.0, p=CoefficientFunction.polynomial([0.3, 0.5]))
    spectrum = tracked_spectrum(characteristic_set(problem), Variant.L, oracle_spectrum(0.0, 500))
    product = build_product(spectrum, GEOMETRY)
    ctx = characteristic_set(problem)
    for lam in (-5.0, 3.0 + 4.0j, -20.0 - 10.0j, 30.0j):
        forward = ctx.components([lam])[0, 0]
        assert abs(evaluate_product(product, lam) / forward - 1.0) < 1e-2


@pytest.mark.slow
def test_reconstructed_weyl_matches_forward():
    products = {
        variant: build_product(spectrum_of(oracle_eigenvalues(0.0, variant, 200), variant), GEOMETRY)
        for variant in Variant
    }
    lam = -5.0 + 2.0j
    expected = weyl_matrix(reduce_to_matrix(InvolutionProblem(alpha=0.0)), lam)
    reconstructed = reconstructed_weyl(products, lam)
    assert np.linalg.norm(reconstructed - expected) / np.linalg.norm(expected) < 1e-2
