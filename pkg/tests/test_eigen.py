import numpy as np
import pytest

from src.errors import ConsistencyError
from src.problem.coefficients import CoefficientFunction
from src.problem.models import InvolutionProblem, Variant
from src.spectral.characteristic import characteristic_set
from src.spectral.contour import Rectangle, Zero
from src.spectral.eigen import (
    Spectrum,
    find_eigenvalues,
    find_lowest_eigenvalues,
    pair_eigenvalues,
    tracked_spectrum,
    zero_shift,
)
from src.spectral.oracle import oracle_eigenvalues, oracle_spectrum


def test_free_spectrum_in_strip(zero_problem):
    spectrum = find_eigenvalues(characteristic_set(zero_problem), Rectangle(-50, 50, -1, 1), Variant.L)
    expected = np.array([-4.0 * np.pi**2, -(np.pi**2), (np.pi / 2) ** 2, (1.5 * np.pi) ** 2])
    assert spectrum.count == 4
    assert np.allclose(spectrum.values(), expected, rtol=1e-9)
    assert spectrum.shift == 0.0


def test_lowest_eigenvalues_match_closed_form():
    problem = InvolutionProblem(alpha=0.3)
    spectrum = find_lowest_eigenvalues(characteristic_set(problem), Variant.L, 5)
    assert np.allclose(spectrum.lowest(5), oracle_spectrum(0.3, 5), rtol=1e-8)


@pytest.mark.parametrize("variant", [Variant.L11, Variant.L12, Variant.L21, Variant.L22])
def test_boundary_variants_match_oracle(variant):
    problem = InvolutionProblem(alpha=0.3)
    spectrum = find_lowest_eigenvalues(characteristic_set(problem), variant, 4)
    assert np.allclose(spectrum.lowest(4), oracle_eigenvalues(0.3, variant, 4), rtol=1e-7)


def test_tracking_follows_small_perturbation():
    problem = InvolutionProblem(alpha=0.3, p=CoefficientFunction.constant(0.05))
    ctx = characteristic_set(problem)
    seeds = oracle_spectrum(0.3, 6)
    tracked = tracked_spectrum(ctx, Variant.L, seeds)
    assert np.max(np.abs(tracked.values() - np.sort_complex(seeds))) < 1.0
    delta = ctx.function(Variant.L)
    scale = np.abs(delta(tracked.values() + 1.0))
    assert np.all(np.abs(delta(tracked.values())) < 1e-8 * np.maximum(scale, 1.0))


def test_zero_shift():
    assert zero_shift([0.0, 5.0, -3.0]) == pytest.approx(-1.5)
    assert zero_shift([2.0, 3.0]) == 0.0


def test_spectrum_sorted_lexicographically():
    zeros = (Zero(2.0 + 1.0j, 1), Zero(-1.0, 1), Zero(2.0 - 1.0j, 2))
    spectrum = Spectrum(eigenvalues=zeros, region=Rectangle(-3, 3, -3, 3), variant="L11")
    assert spectrum.variant is Variant.L11
    assert spectrum.count == 4
    assert list(spectrum.values()) == [-1.0, 2.0 - 1.0j, 2.0 - 1.0j, 2.0 + 1.0j]


def test_spectrum_count_must_match_multiplicities():
    with pytest.raises(ConsistencyError):
        Spectrum(eigenvalues=(Zero(1.0, 2),), region=Rectangle(-3, 3, -3, 3), variant="L", count=3)


def test_pairing_restores_target_order():
    target = np.array([1.0, 5.0j, -2.0])
    candidate = np.array([-2.1, 1.05, 4.9j])
    assert np.allclose(pair_eigenvalues(candidate, target), [1.05, 4.9j, -2.1])


def test_real_data_spectrum_is_conjugation_invariant(linear_problem):
    spectrum = find_eigenvalues(characteristic_set(linear_problem), Rectangle(-60, 45, -7.3, 7.3), Variant.L)
    values = spectrum.values()
    assert spectrum.count == 4
    assert np.allclose(pair_eigenvalues(np.conj(values), values), values, atol=1e-8)


def test_count_does_not_depend_on_subdivision(zero_problem):
    ctx = characteristic_set(zero_problem)
    whole = find_eigenvalues(ctx, Rectangle(-50, 50, -1, 1), Variant.L)
    cuts = [-50.0, -20.0, 0.0, 5.0, 50.0]
    parts = [find_eigenvalues(ctx, Rectangle(a, b, -1, 1), Variant.L) for a, b in zip(cuts, cuts[1:])]
    assert sum(part.count for part in parts) == whole.count == 4
    pieces = np.concatenate([part.values() for part in parts])
    assert np.allclose(pair_eigenvalues(pieces, whole.values()), whole.values(), rtol=1e-9)
