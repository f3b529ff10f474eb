"""Восстановление характеристических функций по нулям: произведения Адамара и константы c, c_jk"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from src.config import settings
from src.errors import ConvergenceError, NearEigenvalueError, UsageError
from src.problem.geometry import SectorGeometry
from src.problem.models import Variant
from src.problem.reduction import U, U_DAGGER
from src.spectral.asymptotics import leading_log, ray_point
from src.spectral.eigen import Spectrum

logger = logging.getLogger(__name__)

DEFAULT_RADII = tuple(float(r) for r in np.geomspace(20.0, 200.0, 12))


@dataclass(frozen=True)
class BranchModel:
    """Нули ветви sqrt(w lambda) ~ phase + pi j; phase_alt подобрана по половине точек"""

    weight: complex
    phase: complex
    phase_alt: complex
    size: int

    def log_tail(self, lam, phase: complex | None = None) -> np.ndarray:
        """log prod_{j>=1} (1 - w lambda / (phase + pi j)^2) через Gamma-функцию"""
        phase = self.phase if phase is None else phase
        b = 1.0 + phase / np.pi
        x = np.sqrt(self.weight * np.asarray(lam, dtype=complex)) / np.pi
        return 2.0 * loggamma(b) - loggamma(b - x) - loggamma(b + x)


@dataclass(frozen=True)
class TailModel:
    branches: tuple[BranchModel, ...]

    def log_factor(self, lam, shift: float = 0.0, *, alternative: bool = False) -> np.ndarray:
        total = np.zeros(np.shape(lam), dtype=complex)
        for branch in self.branches:
            phase = branch.phase_alt if alternative else branch.phase
            total = total + branch.log_tail(lam, phase) - branch.log_tail(shift, phase)
        return total


def classify_branches(values: np.ndarray, weights, *, check_count: int) -> np.ndarray:
    """Номер ветви для каждого нуля: та, у которой sqrt(w_k lambda) ближе к положительной полуоси"""
    weights = np.asarray(weights, dtype=complex)
    angles = np.abs(np.angle(np.sqrt(weights[None, :] * values[:, None])))
    labels = np.argmin(angles, axis=1)
    order = np.argsort(np.abs(values))[::-1][:check_count]
    low, high = np.sort(angles[order], axis=1).T
    ambiguous = np.abs(high - low) < settings.HADAMARD_AMBIGUITY * np.maximum(high, 1e-300)
    if np.any(ambiguous):
        worst = values[order][ambiguous][0]
        raise ConvergenceError(
            f"Нуль {worst} нельзя однозначно отнести к одной из двух ветвей", value=complex(worst)
        )
    return labels


def fit_tail(values, weights, *, fit_count: int | None = None) -> TailModel:
    """Фазы двух квадратичных ветвей по последним вычисленным нулям"""
    fit_count = fit_count or settings.HADAMARD_TAIL_FIT
    values = np.asarray(values, dtype=complex)
    values = values[np.abs(values) > 1e-8]
    labels = classify_branches(values, weights, check_count=2 * fit_count)
    branches = []
    for k, weight in enumerate(np.asarray(weights, dtype=complex)):
        z = np.sqrt(weight * values[labels == k])
        if z.size < 2:
            logger.warning(f"Ветвь {k + 1}: нулей {z.size}, хвост не моделируется")
            continue
        z = z[np.argsort(z.real, kind="stable")]

        def phase_of(tail: np.ndarray) -> complex:
            offsets = np.round((tail - tail[-1]).real / np.pi)
            return complex(np.mean(tail - np.pi * offsets))

        last = z[-min(fit_count, z.size) :]
        branches.append(
            BranchModel(
                weight=complex(weight),
                phase=phase_of(last),
                phase_alt=phase_of(last[-max(2, last.size // 2) :]),
                size=int(z.size),
            )
        )
        logger.debug(f"Ветвь {k + 1}: {z.size} нулей, фаза {branches[-1].phase:.6f}")
    return TailModel(tuple(branches))


@dataclass(frozen=True)
class ZeroProduct:
    """prod (1 - (lambda - s)/(lambda_n - s)) с хвостом"""

    values: np.ndarray
    shift: float
    tail: TailModel | None

    def log_value(self, lam, *, alternative: bool = False) -> np.ndarray:
        lam = np.asarray(lam, dtype=complex)
        terms = np.log((self.values[None, :] - lam.ravel()[:, None]) / (self.values - self.shift))
        total = terms.sum(axis=1).reshape(lam.shape)
        if self.tail is not None:
            total = total + self.tail.log_factor(lam, self.shift, alternative=alternative)
        return total


def zero_product(
    spectrum: Spectrum, weights, *, truncation: int | None = None, tail: bool = True
) -> ZeroProduct:
    values = spectrum.values()
    if truncation is not None:
        if truncation > values.size:
            raise UsageError(f"Запрошено {truncation} нулей, доступно {values.size}")
        values = spectrum.lowest(truncation)
    if tail and values.size < 100:
        logger.warning(f"{spectrum.variant}: хвост строится всего по {values.size} нулям")
    model = fit_tail(values, weights) if tail and values.size else None
    return ZeroProduct(values=values, shift=spectrum.shift, tail=model)


@dataclass(frozen=True)
class RayConstant:
    value: complex
    error: float
    ray: float


def _extrapolate(radii: np.ndarray, logs: np.ndarray) -> tuple[complex, complex, float]:
    """Пределы при 1/r -> 0 по многочленам степени 2 и 1, и разброс остатков"""
    h = 1.0 / radii
    logs = logs.real + 1j * np.unwrap(logs.imag)
    quadratic = np.polyfit(h, logs, 2)
    linear = np.polyfit(h, logs, 1)
    spread = float(np.max(np.abs(np.polyval(quadratic, h) - logs)))
    return complex(quadratic[-1]), complex(linear[-1]), spread


def ray_limit_constant(
    zeros: Spectrum,
    kind: Variant,
    geometry: SectorGeometry,
    *,
    ray_index: int = 0,
    truncation: int | None = None,
    tail: bool = True,
    radii=None,
) -> RayConstant:
    """c = lim (главный член Delta) / prod(...) вдоль луча, экстраполяция по 1/r"""
    kind = Variant(kind)
    product = zero_product(zeros, geometry.weights, truncation=truncation, tail=tail)
    return _ray_constant(product, kind, geometry, ray_index, radii)


def _ray_constant(
    product: ZeroProduct, kind: Variant, geometry: SectorGeometry, ray_index: int, radii
) -> RayConstant:
    radii = np.asarray(DEFAULT_RADII if radii is None else radii, dtype=float)
    points = [ray_point(geometry, ray_index, r) for r in radii]
    lambdas = np.array([rho**2 for rho, _ in points])
    leading = np.array([leading_log(rho, d, kind) for rho, d in points])
    logs = leading - product.log_value(lambdas)
    best, rough, spread = _extrapolate(radii, logs)
    value = complex(np.exp(best))
    error = abs(value - np.exp(rough)) + abs(value) * spread
    if product.tail is not None:
        alt = leading[-1] - product.log_value(lambdas[-1:], alternative=True)[0]
        error += abs(np.exp(logs[-1]) - np.exp(alt))
    logger.debug(f"{kind}, луч {geometry.rays[ray_index]:.4f}: c = {value:.10g} +- {error:.2e}")
    if not np.isfinite(error) or error > 0.1 * abs(value):
        raise ConvergenceError(
            f"Экстраполяция константы для {kind} не сошлась: {value} +- {error:.3e}",
            value=value,
            error=float(error),
        )
    return RayConstant(value=value, error=float(error), ray=float(geometry.rays[ray_index]))


@dataclass(frozen=True)
class HadamardProduct:
    zeros: Spectrum
    kind: Variant
    constant: complex
    constant_error: float
    truncation: int
    product: ZeroProduct
    ray: float | None

    @property
    def tail(self) -> TailModel | None:
        return self.product.tail


def build_product(
    spectrum: Spectrum,
    geometry: SectorGeometry,
    *,
    truncation: int | None = None,
    tail: bool = True,
    ray_index: int = 0,
    constant: complex | None = None,
) -> HadamardProduct:
    """Произведение Адамара с константой из предела на луче (или заданной)"""
    product = zero_product(spectrum, geometry.weights, truncation=truncation, tail=tail)
    if constant is None:
        limit = _ray_constant(product, spectrum.variant, geometry, ray_index, None)
        constant, error, ray = limit.value, limit.error, limit.ray
    else:
        error, ray = 0.0, None
    if constant == 0:
        raise ConvergenceError(f"Нулевая константа для {spectrum.variant}")
    return HadamardProduct(
        zeros=spectrum,
        kind=spectrum.variant,
        constant=complex(constant),
        constant_error=float(error),
        truncation=int(product.values.size),
        product=product,
        ray=ray,
    )


def evaluate_product(h: HadamardProduct, lam: complex) -> complex:
    """c prod (1 - (lambda - s)/(lambda_n - s)); в сохранённом нуле ровно 0"""
    lam = complex(lam)
    if np.any(h.product.values == lam):
        return 0j
    return complex(h.constant * np.exp(h.product.log_value(np.array([lam]))[0]))


def evaluate_with_bound(h: HadamardProduct, lam: complex) -> tuple[complex, float]:
    """Значение и оценка погрешности по чувствительности хвоста и константы"""
    value = evaluate_product(h, lam)
    if value == 0:
        return value, 0.0
    bound = abs(value) * h.constant_error / abs(h.constant)
    if h.tail is not None:
        points = np.array([complex(lam)])
        delta = h.product.log_value(points, alternative=True)[0] - h.product.log_value(points)[0]
        bound += abs(value) * abs(np.exp(delta) - 1.0)
    return value, float(bound)


def reconstructed_weyl(products: dict[Variant, HadamardProduct], lam: complex) -> np.ndarray:
    """M(lambda) = U [Delta_jk] U^H / Delta по пяти восстановленным функциям"""
    missing = [v for v in Variant if v not in products]
    if missing:
        raise UsageError(f"Нет произведений для {', '.join(missing)}")
    delta = evaluate_product(products[Variant.L], lam)
    if delta == 0:
        raise NearEigenvalueError(f"lambda = {lam} совпадает с нулём Delta", det_abs=0.0)
    cramer = np.array(
        [
            [evaluate_product(products[Variant.L11], lam), evaluate_product(products[Variant.L12], lam)],
            [evaluate_product(products[Variant.L21], lam), evaluate_product(products[Variant.L22], lam)],
        ]
    )
    return U @ cramer @ U_DAGGER / delta
