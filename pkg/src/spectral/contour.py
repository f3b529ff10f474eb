"""Нули целой функции в прямоугольнике: число вращения, деление ячеек, метод Ньютона"""
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.config import settings
from src.errors import ConsistencyError, RegionError, UsageError

logger = logging.getLogger(__name__)

BatchFunction = Callable[[np.ndarray], np.ndarray]

# Несимметричные доли, чтобы линия деления не ложилась на ось симметрии спектра
_SPLIT_FRACTIONS = (0.5137, 0.4711, 0.5523, 0.4329, 0.5891)
_INFLATION = 0.02
_MAX_INFLATIONS = 3


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        values = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(np.isfinite(values)):
            raise UsageError("Границы области должны быть конечными")
        if self.re_min >= self.re_max or self.im_min >= self.im_max:
            raise UsageError(f"Вырожденная область {values}")

    @classmethod
    def from_sequence(cls, values) -> "Rectangle":
        re_min, re_max, im_min, im_max = (float(v) for v in values)
        return cls(re_min, re_max, im_min, im_max)

    @classmethod
    def square(cls, half: float, center: complex = 0.0) -> "Rectangle":
        center = complex(center)
        return cls(center.real - half, center.real + half, center.imag - half, center.imag + half)

    def as_list(self) -> list[float]:
        return [self.re_min, self.re_max, self.im_min, self.im_max]

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def diameter(self) -> float:
        return float(np.hypot(self.width, self.height))

    def contains(self, z, margin: float = 0.0) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return (
            (z.real >= self.re_min - margin)
            & (z.real <= self.re_max + margin)
            & (z.imag >= self.im_min - margin)
            & (z.imag <= self.im_max + margin)
        )

    def inflated(self, fraction: float) -> "Rectangle":
        pad = fraction * max(self.width, self.height)
        return Rectangle(self.re_min - pad, self.re_max + pad, self.im_min - pad, self.im_max + pad)

    def split(self, fraction: float = 0.5) -> tuple["Rectangle", "Rectangle"]:
        """Деление поперёк длинной стороны"""
        if self.width >= self.height:
            cut = self.re_min + fraction * self.width
            return (
                Rectangle(self.re_min, cut, self.im_min, self.im_max),
                Rectangle(cut, self.re_max, self.im_min, self.im_max),
            )
        cut = self.im_min + fraction * self.height
        return (
            Rectangle(self.re_min, self.re_max, self.im_min, cut),
            Rectangle(self.re_min, self.re_max, cut, self.im_max),
        )

    def boundary(self, per_side: int) -> np.ndarray:
        """4 * per_side точек против часовой стрелки; набор для 2n содержит набор для n"""
        t = np.arange(per_side) / per_side
        bottom = (self.re_min + self.width * t) + 1j * self.im_min
        right = self.re_max + 1j * (self.im_min + self.height * t)
        top = (self.re_max - self.width * t) + 1j * self.im_max
        left = self.re_min + 1j * (self.im_max - self.height * t)
        return np.concatenate([bottom, right, top, left])


class EvaluationCache:
    """Запоминает значения функции в уже посчитанных точках"""

    def __init__(self, function: BatchFunction):
        self._function = function
        self._values: dict[complex, complex] = {}
        self._lock = threading.Lock()

    def __call__(self, points) -> np.ndarray:
        keys = np.asarray(points, dtype=complex).ravel().tolist()
        with self._lock:
            missing = [z for z in dict.fromkeys(keys) if z not in self._values]
        if missing:
            values = np.asarray(self._function(np.array(missing, dtype=complex)), dtype=complex)
            with self._lock:
                self._values.update(zip(missing, values.tolist()))
        return np.array([self._values[z] for z in keys], dtype=complex)

    @property
    def function(self) -> BatchFunction:
        return self._function


def winding_number(
    function: BatchFunction,
    rect: Rectangle,
    *,
    min_points: int | None = None,
    max_points: int | None = None,
) -> int:
    """Число нулей в прямоугольнике по приращению аргумента на границе"""
    per_side = min_points or settings.CONTOUR_MIN_POINTS
    max_points = max_points or settings.CONTOUR_MAX_POINTS
    previous_count = None
    previous_jump = None
    stuck = 0
    while per_side <= max_points:
        values = function(rect.boundary(per_side))
        if np.any(values == 0) or not np.all(np.isfinite(values)):
            raise RegionError(
                "Нуль функции на границе области", suggested_inflation=_INFLATION, region=rect.as_list()
            )
        steps = np.angle(np.roll(values, -1) / values)
        total = steps.sum() / (2.0 * np.pi)
        count = int(round(total))
        jump = float(np.max(np.abs(steps)))
        smooth = jump < np.pi / 4 and abs(total - count) < 1e-3
        if smooth and previous_count == count:
            return count
        if previous_jump is not None and jump > np.pi / 2 and jump > 0.8 * previous_jump:
            stuck += 1
            if stuck >= 3:
                raise RegionError(
                    "Граница области проходит слишком близко к нулю",
                    suggested_inflation=_INFLATION,
                    region=rect.as_list(),
                )
        else:
            stuck = 0
        previous_count = count if smooth else None
        previous_jump = jump
        per_side *= 2
    raise RegionError(
        "Число вращения не стабилизировалось", suggested_inflation=_INFLATION, region=rect.as_list()
    )


def newton_batch(
    function: BatchFunction,
    starts,
    *,
    multiplicities=None,
    max_iter: int | None = None,
    step_limits=None,
) -> tuple[np.ndarray, np.ndarray]:
    """Комплексный метод Ньютона с центральной разностью, сразу для всех стартов"""
    z = np.array(starts, dtype=complex).ravel()
    m = np.ones(z.size) if multiplicities is None else np.asarray(multiplicities, dtype=float)
    limits = None if step_limits is None else np.asarray(step_limits, dtype=float)
    max_iter = max_iter or settings.NEWTON_MAX_ITER
    converged = np.zeros(z.size, dtype=bool)
    active = np.ones(z.size, dtype=bool)
    previous = np.full(z.size, np.inf)
    for iteration in range(max_iter):
        index = np.nonzero(active)[0]
        if index.size == 0:
            break
        point = z[index]
        h = 1e-6 * np.maximum(1.0, np.abs(point))
        values = np.asarray(function(np.concatenate([point, point + h, point - h])), dtype=complex)
        f0, fp, fm = np.split(values, 3)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = m[index] * f0 / ((fp - fm) / (2.0 * h))
        step = np.where(f0 == 0, 0.0, step)
        failed = ~np.isfinite(step)
        step = np.where(failed, 0.0, step)
        if limits is not None:
            size = np.abs(step)
            bound = limits[index]
            step = np.where(size > bound, step * bound / np.maximum(size, 1e-300), step)
        z[index] = point - step
        size = np.abs(step)
        scale = np.maximum(1.0, np.abs(z[index]))
        stalled = (size >= 0.5 * previous[index]) & (size < 1e-9 * scale)
        done = (size <= 1e-12 * scale) | stalled
        converged[index[done]] = True
        active[index[done | failed]] = False
        previous[index] = size
        logger.debug(f"Ньютон, итерация {iteration}: активных {int(active.sum())}")
    return z, converged


@dataclass(frozen=True)
class Zero:
    value: complex
    multiplicity: int


def _min_cell(rect: Rectangle) -> float:
    return 1e-7 * max(1.0, abs(rect.center))


def _count_region(cache: EvaluationCache, region: Rectangle) -> tuple[Rectangle, int]:
    for attempt in range(_MAX_INFLATIONS + 1):
        try:
            return region, winding_number(cache, region)
        except RegionError as error:
            if attempt == _MAX_INFLATIONS:
                raise
            inflated = region.inflated(error.suggested_inflation)
            logger.warning(f"Область {region.as_list()} расширена до {inflated.as_list()}")
            region = inflated
    raise AssertionError("unreachable")


def _split_cell(cache: EvaluationCache, rect: Rectangle, count: int) -> list[tuple[Rectangle, int]]:
    for fraction in _SPLIT_FRACTIONS:
        first, second = rect.split(fraction)
        try:
            counts = (winding_number(cache, first), winding_number(cache, second))
        except RegionError:
            continue
        if sum(counts) == count:
            logger.debug(f"Ячейка {rect.as_list()}: {count} -> {counts}")
            return [(first, counts[0]), (second, counts[1])]
        logger.debug(f"Несогласованные числа вращения {counts} при {count}, доля {fraction}")
    raise ConsistencyError(
        f"Не удалось разделить ячейку {rect.as_list()} с {count} нулями", region=rect.as_list()
    )


def find_zeros(
    function: BatchFunction,
    region: Rectangle,
    *,
    tol: float | None = None,
    workers: int | None = None,
) -> tuple[list[Zero], int, Rectangle]:
    """Все нули в области с кратностями; возвращает также итоговую (возможно расширенную) область"""
    tol = tol or settings.ROOT_TOL
    cache = function if isinstance(function, EvaluationCache) else EvaluationCache(function)
    region, total = _count_region(cache, region)
    logger.debug(f"В области {region.as_list()} нулей: {total}")
    if total == 0:
        return [], 0, region

    zeros: list[Zero] = []
    pending = [(region, total)]
    with ThreadPoolExecutor(max_workers=workers or settings.WORKER_CONCURRENCY) as pool:
        while pending:
            leaves = [cell for cell in pending if _is_leaf(*cell)]
            to_split = [cell for cell in pending if not _is_leaf(*cell)]
            if leaves:
                refined, escaped = _refine(cache, leaves, tol)
                zeros.extend(refined)
                to_split.extend(escaped)
            pending = []
            for children in pool.map(lambda cell: _split_cell(cache, *cell), to_split):
                pending.extend(child for child in children if child[1] > 0)

    zeros.sort(key=lambda zero: (zero.value.real, zero.value.imag))
    _check_distinct(zeros)
    found = sum(zero.multiplicity for zero in zeros)
    if found != total:
        raise ConsistencyError(f"Найдено {found} нулей, число вращения {total}", count=total)
    return zeros, total, region


def _is_leaf(rect: Rectangle, count: int) -> bool:
    return count == 1 or rect.diameter < _min_cell(rect)


def _refine(
    cache: EvaluationCache, leaves: list[tuple[Rectangle, int]], tol: float
) -> tuple[list[Zero], list[tuple[Rectangle, int]]]:
    """Ньютон из центров ячеек; ушедшие из своей ячейки старты возвращаются на деление"""
    roots, converged = newton_batch(
        cache.function,
        [rect.center for rect, _ in leaves],
        multiplicities=[count for _, count in leaves],
    )
    accepted, escaped = [], []
    for (rect, count), root, good in zip(leaves, roots, converged):
        margin = 1e-3 * max(rect.width, rect.height)
        if good and rect.contains(root, margin):
            accepted.append((rect, count, complex(root)))
        elif rect.diameter < _min_cell(rect):
            raise ConsistencyError(
                f"Ньютон не сошёлся в минимальной ячейке {rect.as_list()}", region=rect.as_list()
            )
        else:
            escaped.append((rect, count))

    zeros = []
    if accepted:
        residuals = np.abs(cache.function(np.array([root for _, _, root in accepted])))
        for (rect, count, root), residual in zip(accepted, residuals):
            scale = max(1.0, float(np.max(np.abs(cache(rect.boundary(settings.CONTOUR_MIN_POINTS))))))
            if residual > tol * scale:
                raise ConsistencyError(
                    f"Невязка {residual:.3e} в уточнённом нуле {root} выше допуска",
                    value=root,
                    residual=float(residual),
                )
            zeros.append(Zero(value=root, multiplicity=count))
    return zeros, escaped


def _check_distinct(zeros: list[Zero]) -> None:
    values = np.array([zero.value for zero in zeros])
    for i in range(values.size):
        for j in range(i + 1, values.size):
            if abs(values[i] - values[j]) < 1e-9 * max(1.0, abs(values[i])):
                raise ConsistencyError(
                    f"Два уточнённых нуля совпали: {values[i]}", value=complex(values[i])
                )
