"""Восстановление p, q по пяти спектрам методом Левенберга-Марквардта с мультистартом"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Literal

import numpy as np
from scipy.optimize import least_squares

from src.config import settings
from src.errors import ToolkitError, UsageError
from src.hadamard.product import HadamardProduct, build_product, evaluate_product
from src.inverse.basis import CoefficientBasis
from src.inverse.residual import TargetSpectra, eigenvalue_mismatches, spectra_residual
from src.problem.geometry import sector_geometry
from src.problem.models import Variant
from src.problem.reduction import weight_from_alpha
from src.spectral.characteristic import characteristic_set

logger = logging.getLogger(__name__)

_PENALTY = 1e3


@dataclass(frozen=True)
class FitOptions:
    count: int = 20
    starts: int | None = None
    seed: int = 42
    tol: float | None = None
    mode: Literal["eigen", "charfun"] = "eigen"
    ridge: float | None = None
    diff_step: float | None = None
    max_nfev: int = 100
    variants: tuple[Variant, ...] = tuple(Variant)
    real_coefficients: bool = True
    start_scale: float = 0.5
    initial: tuple[tuple[complex, ...], ...] = ()
    charfun_points: int = 16
    workers: int | None = None

    def __post_init__(self):
        if self.mode not in ("eigen", "charfun"):
            raise UsageError(f"Неизвестный режим подгонки: {self.mode}")
        if self.count < 1:
            raise UsageError("Число сопоставляемых собственных значений должно быть положительным")
        object.__setattr__(self, "variants", tuple(Variant(v) for v in self.variants))


@dataclass(frozen=True)
class StartResult:
    index: int
    params: np.ndarray
    objective: float
    evaluations: int
    message: str
    history: tuple[float, ...] = ()


@dataclass(frozen=True)
class FitReport:
    basis: CoefficientBasis
    residual: float
    history: tuple[float, ...]
    mismatches: dict[Variant, np.ndarray]
    converged: bool
    mode: str
    starts: tuple[StartResult, ...] = field(default=())

    @property
    def best_start(self) -> int:
        return min(self.starts, key=lambda start: start.objective).index if self.starts else -1


class _Objective:
    """Вектор невязок для least_squares: Re и Im расхождений плюс гребневый член"""

    def __init__(self, basis: CoefficientBasis, targets: TargetSpectra, options: FitOptions):
        self.basis = basis
        self.targets = targets
        self.options = options
        self.real = options.real_coefficients
        self.ridge = np.sqrt(settings.FIT_RIDGE if options.ridge is None else options.ridge)
        self.products: dict[Variant, HadamardProduct] = {}
        self.grid = np.zeros(0, dtype=complex)
        if options.mode == "charfun":
            self._prepare_charfun()
        size = 2 * self._residual_count() + self.basis.to_vector(self.real).size
        self.size = size

    def _residual_count(self) -> int:
        if self.options.mode == "eigen":
            return len(self.options.variants) * self.options.count
        return len(self.options.variants) * self.grid.size

    def _prepare_charfun(self) -> None:
        geometry = sector_geometry(weight_from_alpha(self.targets.alpha))
        smallest = np.inf
        for variant in self.options.variants:
            spectrum = self.targets.spectra[variant]
            self.products[variant] = build_product(spectrum, geometry)
            smallest = min(smallest, float(np.min(np.abs(spectrum.values()))))
        angles = 2.0 * np.pi * (np.arange(self.options.charfun_points) + 0.5) / self.options.charfun_points
        self.grid = 0.5 * smallest * np.exp(1j * angles)
        self.reference = {
            variant: np.array([evaluate_product(product, lam) for lam in self.grid])
            for variant, product in self.products.items()
        }

    def differences(self, candidate: CoefficientBasis) -> np.ndarray:
        if self.options.mode == "eigen":
            mismatches = eigenvalue_mismatches(
                candidate, self.targets, self.options.count, self.options.variants
            )
            return np.concatenate([mismatches[v] for v in self.options.variants])
        ctx = characteristic_set(candidate.to_problem(self.targets.alpha))
        values = ctx.components(self.grid)
        parts = []
        for variant in self.options.variants:
            reference = self.reference[variant]
            parts.append((values[:, variant.index] - reference) / np.abs(reference))
        return np.concatenate(parts)

    def __call__(self, vector: np.ndarray) -> np.ndarray:
        candidate = self.basis.from_vector(vector, self.real)
        try:
            diff = self.differences(candidate)
        except ToolkitError as error:
            logger.warning(f"Невязка не вычислена, штраф: {error.message}")
            return np.full(self.size, _PENALTY)
        return np.concatenate([diff.real, diff.imag, self.ridge * np.asarray(vector, dtype=float)])

    def jacobian(self, vector: np.ndarray) -> np.ndarray:
        """Центральные разности с шагом diff_step * max(1, |x_i|)"""
        step_size = settings.FIT_DIFF_STEP if self.options.diff_step is None else self.options.diff_step
        vector = np.asarray(vector, dtype=float)
        columns = []
        for i in range(vector.size):
            step = step_size * max(1.0, abs(vector[i]))
            shift = np.zeros_like(vector)
            shift[i] = step
            columns.append((self(vector + shift) - self(vector - shift)) / (2.0 * step))
        return np.stack(columns, axis=1)


def _start_vectors(basis: CoefficientBasis, options: FitOptions) -> list[np.ndarray]:
    dimension = basis.to_vector(options.real_coefficients).size
    starts = [np.zeros(dimension)]
    for initial in options.initial:
        starts.append(basis.with_params(initial).to_vector(options.real_coefficients))
    rng = np.random.default_rng(options.seed)
    total = options.starts or settings.FIT_STARTS
    while len(starts) < total:
        starts.append(options.start_scale * rng.standard_normal(dimension))
    return starts[: max(total, 1 + len(options.initial))]


def fit_coefficients(
    targets: TargetSpectra, basis: CoefficientBasis, options: FitOptions | None = None
) -> FitReport:
    """Локальные минимумы невязки из нескольких стартов; лучший пересчитывается независимо"""
    options = options or FitOptions()
    tol = options.tol
    if tol is None:
        # в режиме charfun точность ограничена погрешностью восстановленных Delta
        tol = settings.FIT_TOL if options.mode == "eigen" else 1e-4 * options.count
    missing = [v for v in options.variants if v not in targets.spectra]
    if missing:
        raise UsageError(f"Нет целевых спектров: {', '.join(missing)}")
    objective = _Objective(basis, targets, options)
    starts = _start_vectors(basis, options)
    logger.info(
        f"Подгонка {basis.label}, режим {options.mode}: {len(starts)} стартов, "
        f"задачи {', '.join(options.variants)}"
    )

    def run(item: tuple[int, np.ndarray]) -> StartResult:
        index, start = item
        history: list[float] = []

        def tracked(vector):
            values = objective(vector)
            history.append(float(np.sum(values**2)))
            return values

        result = least_squares(
            tracked,
            start,
            jac=objective.jacobian,
            method="lm",
            xtol=1e-15,
            ftol=1e-15,
            gtol=1e-15,
            max_nfev=options.max_nfev,
        )
        value = float(np.sum(result.fun**2))
        logger.info(f"Старт {index}: невязка {value:.3e} за {result.nfev} вычислений")
        return StartResult(
            index=index,
            params=basis.from_vector(result.x, options.real_coefficients).params,
            objective=value,
            evaluations=int(result.nfev),
            message=str(result.message),
            history=tuple(history),
        )

    with ThreadPoolExecutor(max_workers=options.workers or settings.WORKER_CONCURRENCY) as pool:
        results = tuple(pool.map(run, enumerate(starts)))

    best = min(results, key=lambda start: start.objective)
    recovered = basis.with_params(best.params)
    try:
        residual = spectra_residual(recovered, targets, options.count, variants=options.variants)
        mismatches = eigenvalue_mismatches(recovered, targets, options.count, options.variants)
    except ToolkitError as error:
        logger.warning(f"Итоговая невязка не вычислена: {error.message}")
        residual, mismatches = float("inf"), {}
    converged = bool(residual <= tol)
    logger.info(f"Подгонка завершена: невязка {residual:.3e}, сходимость {converged}")
    return FitReport(
        basis=recovered,
        residual=residual,
        history=best.history,
        mismatches=mismatches,
        converged=converged,
        mode=options.mode,
        starts=results,
    )


@dataclass(frozen=True)
class NonUniquenessWitness:
    """Кандидат с тем же спектром L, что и reference, но другими коэффициентами"""

    reference: CoefficientBasis
    candidate: CoefficientBasis
    residual_single: float
    residual_all: float | None
    distance: float

    @property
    def found(self) -> bool:
        return self.residual_single < 1e-8 and self.distance > 1e-3


def nonuniqueness_witness(
    targets: TargetSpectra,
    reference: CoefficientBasis,
    options: FitOptions | None = None,
) -> NonUniquenessWitness:
    """Подгонка только по спектру L со стартами из reference и его отражения p(-x), q(-x)

    Из стартов с нулевой невязкой по L берётся самый далёкий от reference; невязка по всем
    пяти спектрам показывает, что остальные спектры такого кандидата отличают.
    """
    options = replace(
        options or FitOptions(),
        variants=(Variant.L,),
        initial=(tuple(reference.reflected().params),),
    )
    report = fit_coefficients(targets, reference, options)
    attained = [start for start in report.starts if start.objective < 1e-8] or [
        min(report.starts, key=lambda start: start.objective)
    ]
    candidates = [reference.with_params(start.params) for start in attained]
    candidate = max(candidates, key=reference.sup_distance)
    residual_single = spectra_residual(candidate, targets, options.count, variants=(Variant.L,))
    residual_all = None
    if all(variant in targets.spectra for variant in Variant):
        try:
            residual_all = spectra_residual(candidate, targets, options.count)
        except ToolkitError as error:
            logger.warning(f"Невязка по пяти спектрам не вычислена: {error.message}")
    witness = NonUniquenessWitness(
        reference=reference,
        candidate=candidate,
        residual_single=residual_single,
        residual_all=residual_all,
        distance=reference.sup_distance(candidate),
    )
    logger.info(
        f"Только L: невязка {witness.residual_single:.3e}, расстояние до эталона {witness.distance:.3e}"
    )
    return witness
