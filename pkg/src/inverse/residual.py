"""Невязка между спектрами кандидата и целевыми спектрами"""
import logging
from dataclasses import dataclass

import numpy as np

from src.errors import ConsistencyError, ResidualError, ToolkitError, UsageError
from src.inverse.basis import CoefficientBasis
from src.problem.models import Variant, check_alpha
from src.spectral.characteristic import characteristic_set
from src.spectral.eigen import (
    Spectrum,
    find_lowest_eigenvalues,
    pair_eigenvalues,
    track_eigenvalues,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TargetSpectra:
    alpha: complex
    spectra: dict[Variant, Spectrum]

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        object.__setattr__(
            self, "spectra", {Variant(key): value for key, value in self.spectra.items()}
        )

    def targets(self, variant: Variant, count: int) -> np.ndarray:
        spectrum = self.spectra.get(Variant(variant))
        if spectrum is None:
            raise UsageError(f"Нет целевого спектра {variant}")
        if spectrum.count < count:
            raise UsageError(f"Спектр {variant} содержит {spectrum.count} значений, нужно {count}")
        return spectrum.lowest(count)

    @property
    def variants(self) -> tuple[Variant, ...]:
        return tuple(v for v in Variant if v in self.spectra)


def candidate_eigenvalues(
    basis: CoefficientBasis, alpha: complex, variant: Variant, targets: np.ndarray
) -> np.ndarray:
    """Собственные значения кандидата в порядке целевых: отслеживание, иначе полный поиск и назначение"""
    ctx = characteristic_set(basis.to_problem(alpha, variant))
    try:
        return track_eigenvalues(ctx.function(variant), targets)
    except ConsistencyError as error:
        logger.debug(f"{variant}: отслеживание не удалось ({error.message}), полный поиск")
    spectrum = find_lowest_eigenvalues(ctx, variant, targets.size)
    return pair_eigenvalues(spectrum.lowest(targets.size), targets)


def eigenvalue_mismatches(
    basis: CoefficientBasis,
    targets: TargetSpectra,
    count: int,
    variants=None,
) -> dict[Variant, np.ndarray]:
    """lambda_n(кандидат) - lambda_n(цель) для каждой задачи"""
    variants = tuple(Variant(v) for v in (variants or targets.variants))
    mismatches = {}
    for variant in variants:
        goal = targets.targets(variant, count)
        try:
            found = candidate_eigenvalues(basis, targets.alpha, variant, goal)
        except ToolkitError as error:
            raise ResidualError(
                f"Прямая задача {variant} для кандидата не решена: {error.message}",
                variant=str(variant),
            ) from error
        mismatches[variant] = found - goal
    return mismatches


def spectra_residual(
    params: CoefficientBasis, targets: TargetSpectra, count: int, *, variants=None
) -> float:
    """Сумма |lambda_n(кандидат) - lambda_n(цель)|^2 по задачам и n <= count"""
    mismatches = eigenvalue_mismatches(params, targets, count, variants)
    return float(sum(np.sum(np.abs(diff) ** 2) for diff in mismatches.values()))
