import numpy as np
import pytest

from src.errors import UsageError
from src.inverse.basis import CoefficientBasis
from src.inverse.fit import FitOptions, _Objective, fit_coefficients, nonuniqueness_witness
from src.inverse.residual import TargetSpectra, eigenvalue_mismatches, spectra_residual
from src.problem.coefficients import CoefficientFunction
from src.problem.models import InvolutionProblem, Variant
from src.spectral.characteristic import characteristic_set
from src.spectral.eigen import tracked_spectrum
from src.spectral.oracle import oracle_eigenvalues
from tests.conftest import spectrum_of

COUNT = 10


@pytest.fixture(scope="module")
def free_targets() -> TargetSpectra:
    spectra = {variant: spectrum_of(oracle_eigenvalues(0.0, variant, COUNT), variant) for variant in Variant}
    return TargetSpectra(alpha=0.0, spectra=spectra)


def test_parse_basis():
    basis = CoefficientBasis.parse("poly:1")
    assert basis.size == 2 and basis.params.size == 4
    assert basis.label == "poly:1"
    grid = CoefficientBasis.parse("grid:16")
    assert grid.label == "grid:16" and np.allclose(grid.nodes[[0, -1]], [-1.0, 1.0])


@pytest.mark.parametrize("text", ["poly", "poly:x", "spline:3", "grid:1"])
def test_parse_rejects_bad_basis(text):
    with pytest.raises(UsageError):
        CoefficientBasis.parse(text)


def test_basis_builds_problem():
    basis = CoefficientBasis.parse("poly:1", [0.3, 0.5, 0.2, -0.4])
    problem = basis.to_problem(0.0, Variant.L11)
    assert problem.bc is Variant.L11
    assert problem.p(0.5) == pytest.approx(0.55)
    assert problem.q(-1.0) == pytest.approx(0.6)


def test_real_vector_drops_imaginary_part():
    basis = CoefficientBasis.parse("poly:0", [1.0 + 2.0j, 3.0])
    assert np.allclose(basis.to_vector(real=True), [1.0, 3.0])
    assert np.allclose(basis.from_vector([1.0, 3.0, 2.0, 0.0], real=False).params, [1.0 + 2.0j, 3.0])


def test_reflected_basis_is_distance_zero_to_reflected_coefficients():
    basis = CoefficientBasis.parse("poly:2", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6])
    reflected = basis.reflected()
    t = np.linspace(-1.0, 1.0, 7)
    p, q = basis.coefficients()
    rp, rq = reflected.coefficients()
    assert np.allclose(rp(t), p(-t)) and np.allclose(rq(t), q(-t))
    assert basis.sup_distance(basis) == 0.0


def test_missing_target_spectrum():
    targets = TargetSpectra(alpha=0.0, spectra={Variant.L: spectrum_of([1.0, 2.0])})
    with pytest.raises(UsageError):
        targets.targets(Variant.L11, 2)
    with pytest.raises(UsageError):
        targets.targets(Variant.L, 3)


def test_residual_vanishes_at_truth(free_targets):
    truth = CoefficientBasis.parse("poly:0")
    assert spectra_residual(truth, free_targets, COUNT) < 1e-10


def test_residual_detects_shifted_potential(free_targets):
    candidate = CoefficientBasis.parse("poly:0", [0.1, 0.0])
    assert spectra_residual(candidate, free_targets, COUNT) > 1e-4
    mismatches = eigenvalue_mismatches(candidate, free_targets, COUNT, [Variant.L])
    assert set(mismatches) == {Variant.L}
    assert mismatches[Variant.L].shape == (COUNT,)


def test_reflection_keeps_dirichlet_spectrum():
    problem = InvolutionProblem(alpha=0.0, p=CoefficientFunction.polynomial([0.0, 1.0]))
    seeds = oracle_eigenvalues(0.0, Variant.L, 6)
    direct = tracked_spectrum(characteristic_set(problem), Variant.L, seeds).values()
    mirrored = tracked_spectrum(characteristic_set(problem.reflected()), Variant.L, seeds).values()
    assert np.allclose(direct, mirrored, rtol=1e-8)


def test_fit_options_validation():
    with pytest.raises(UsageError):
        FitOptions(mode="spectra")
    with pytest.raises(UsageError):
        FitOptions(count=0)


def test_fit_requires_all_requested_spectra():
    targets = TargetSpectra(alpha=0.0, spectra={Variant.L: spectrum_of([1.0, 2.0])})
    with pytest.raises(UsageError):
        fit_coefficients(targets, CoefficientBasis.parse("poly:0"), FitOptions(count=2))


@pytest.mark.slow
def test_recovers_constant_coefficients():
    truth = InvolutionProblem(
        alpha=0.0, p=CoefficientFunction.constant(0.3), q=CoefficientFunction.constant(0.2)
    )
    ctx = characteristic_set(truth)
    spectra = {
        variant: tracked_spectrum(ctx, variant, oracle_eigenvalues(0.0, variant, COUNT))
        for variant in Variant
    }
    targets = TargetSpectra(alpha=0.0, spectra=spectra)
    report = fit_coefficients(
        targets, CoefficientBasis.parse("poly:0"), FitOptions(count=COUNT, starts=2, seed=1)
    )
    assert report.converged
    expected = CoefficientBasis.parse("poly:0", [0.3, 0.2])
    assert report.basis.sup_distance(expected) < 1e-6
    assert report.best_start in (0, 1)
    assert len(report.starts) == 2


def self_generated(problem: InvolutionProblem, count: int, variants=tuple(Variant)) -> TargetSpectra:
    ctx = characteristic_set(problem)
    spectra = {
        variant: tracked_spectrum(ctx, variant, oracle_eigenvalues(problem.alpha, variant, count))
        for variant in variants
    }
    return TargetSpectra(alpha=problem.alpha, spectra=spectra)


@pytest.fixture(scope="module")
def dense_free_targets() -> TargetSpectra:
    spectra = {variant: spectrum_of(oracle_eigenvalues(0.0, variant, 200), variant) for variant in Variant}
    return TargetSpectra(alpha=0.0, spectra=spectra)


def test_charfun_differences_vanish_at_truth(dense_free_targets):
    options = FitOptions(count=COUNT, mode="charfun")
    truth = CoefficientBasis.parse("poly:0")
    objective = _Objective(truth, dense_free_targets, options)
    assert objective.grid.size == options.charfun_points
    assert np.max(np.abs(objective.differences(truth))) < 1e-6
    shifted = truth.with_params([0.5, 0.0])
    assert np.max(np.abs(objective.differences(shifted))) > 1e-3


@pytest.mark.slow
def test_charfun_fit_stays_at_truth(dense_free_targets):
    report = fit_coefficients(
        dense_free_targets, CoefficientBasis.parse("poly:0"), FitOptions(count=COUNT, mode="charfun", starts=1)
    )
    assert report.mode == "charfun"
    assert report.converged
    assert report.basis.sup_distance(CoefficientBasis.parse("poly:0")) < 1e-4


@pytest.mark.slow
def test_recovers_linear_coefficients():
    truth = InvolutionProblem(
        alpha=0.0,
        p=CoefficientFunction.polynomial([0.1, 0.2]),
        q=CoefficientFunction.polynomial([0.0, -0.1]),
    )
    report = fit_coefficients(
        self_generated(truth, 20), CoefficientBasis.parse("poly:1"), FitOptions(count=20, starts=2, seed=1)
    )
    assert report.converged
    expected = CoefficientBasis.parse("poly:1", [0.1, 0.2, 0.0, -0.1])
    assert report.basis.sup_distance(expected) < 1e-4


@pytest.mark.slow
def test_inconsistent_targets_are_reported():
    spectra = {variant: spectrum_of(oracle_eigenvalues(0.0, variant, 5), variant) for variant in Variant}
    spectra[Variant.L11] = spectrum_of(oracle_eigenvalues(0.3, Variant.L11, 5), Variant.L11)
    targets = TargetSpectra(alpha=0.0, spectra=spectra)
    report = fit_coefficients(targets, CoefficientBasis.parse("poly:0"), FitOptions(count=5, starts=1))
    assert not report.converged
    assert report.residual > 1e-2


@pytest.mark.slow
def test_perturbed_eigenvalue_is_not_attained():
    spectra = {variant: spectrum_of(oracle_eigenvalues(0.0, variant, COUNT), variant) for variant in Variant}
    values = oracle_eigenvalues(0.0, Variant.L, COUNT)
    values[0] += 1e-3
    spectra[Variant.L] = spectrum_of(values, Variant.L)
    targets = TargetSpectra(alpha=0.0, spectra=spectra)
    report = fit_coefficients(targets, CoefficientBasis.parse("poly:0"), FitOptions(count=COUNT, starts=1))
    assert report.residual > 1e-8
    assert not report.converged


@pytest.mark.slow
def test_dirichlet_spectrum_alone_does_not_determine_coefficients():
    truth = InvolutionProblem(alpha=0.0, p=CoefficientFunction.polynomial([0.0, 0.5]))
    targets = self_generated(truth, 6)
    reference = CoefficientBasis.parse("poly:1", [0.0, 0.5, 0.0, 0.0])
    witness = nonuniqueness_witness(targets, reference, FitOptions(count=6, starts=2))
    assert witness.found
    assert witness.distance >= 1.0 - 1e-3
    assert witness.residual_all > 1e-8
