"""Спектры пяти краевых задач"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from src.errors import ConsistencyError
from src.problem.models import Variant
from src.spectral.characteristic import CharacteristicSet
from src.spectral.contour import BatchFunction, Rectangle, Zero, find_zeros, newton_batch

logger = logging.getLogger(__name__)

_ZERO_EIGENVALUE = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Собственные значения с кратностями, упорядочены по (Re, Im)"""

    eigenvalues: tuple[Zero, ...]
    region: Rectangle
    variant: Variant
    shift: float = 0.0
    count: int = field(default=-1)

    def __post_init__(self):
        ordered = tuple(sorted(self.eigenvalues, key=lambda z: (z.value.real, z.value.imag)))
        object.__setattr__(self, "eigenvalues", ordered)
        object.__setattr__(self, "variant", Variant(self.variant))
        total = sum(zero.multiplicity for zero in ordered)
        if self.count < 0:
            object.__setattr__(self, "count", total)
        elif self.count != total:
            raise ConsistencyError(f"Сумма кратностей {total} не равна числу вращения {self.count}")

    def values(self) -> np.ndarray:
        """Собственные значения с повторениями по кратности"""
        return np.array(
            [zero.value for zero in self.eigenvalues for _ in range(zero.multiplicity)], dtype=complex
        )

    def lowest(self, count: int) -> np.ndarray:
        """count значений наименьшего модуля, упорядоченные по (Re, Im)"""
        values = self.values()
        chosen = values[np.argsort(np.abs(values), kind="stable")][:count]
        return np.array(sorted(chosen, key=lambda z: (z.real, z.imag)), dtype=complex)

    def __len__(self) -> int:
        return self.count


def zero_shift(values) -> float:
    """Сдвиг s < 0 для спектра с нулевым собственным значением (0, если нуля нет)"""
    values = np.asarray(values, dtype=complex)
    if values.size == 0 or np.min(np.abs(values)) > _ZERO_EIGENVALUE:
        return 0.0
    others = np.abs(values[np.abs(values) > _ZERO_EIGENVALUE])
    return -0.5 * float(others.min()) if others.size else -1.0


def find_eigenvalues(ctx: CharacteristicSet, region: Rectangle, variant: Variant) -> Spectrum:
    """Все нули Delta (или Delta_jk) в прямоугольнике"""
    variant = Variant(variant)
    zeros, total, region = find_zeros(ctx.function(variant), region)
    shift = zero_shift([zero.value for zero in zeros])
    if shift:
        logger.info(f"{variant}: нулевое собственное значение, сдвиг s = {shift}")
    logger.info(f"{variant}: найдено {total} собственных значений в {region.as_list()}")
    return Spectrum(eigenvalues=tuple(zeros), region=region, variant=variant, shift=shift, count=total)


def lowest_zeros(function: BatchFunction, count: int, *, start: float) -> tuple[list[Zero], Rectangle]:
    """count нулей наименьшего модуля: квадрат растёт, пока вписанный круг их не вместит"""
    half = start
    while True:
        region = Rectangle(-half, 1.03 * half, -0.97 * half, half)
        zeros, _, region = find_zeros(function, region)
        inside = [zero for zero in zeros if abs(zero.value) <= half]
        if sum(zero.multiplicity for zero in inside) >= count:
            break
        logger.debug(f"В круге радиуса {half:.1f} меньше {count} нулей")
        half *= 2.0
    chosen, taken = [], 0
    for zero in sorted(inside, key=lambda z: abs(z.value)):
        if taken >= count:
            break
        chosen.append(zero)
        taken += zero.multiplicity
    return chosen, region


def initial_radius(weights, count: int) -> float:
    """Оценка модуля count-го собственного значения по двум квадратичным ветвям"""
    scale = float(np.max(np.abs(np.asarray(weights, dtype=complex)) ** -1))
    return max(10.0, 1.5 * scale * (np.pi * (count / 2 + 1)) ** 2)


def find_lowest_eigenvalues(
    ctx: CharacteristicSet, variant: Variant, count: int, *, start: float | None = None
) -> Spectrum:
    variant = Variant(variant)
    start = start or initial_radius(ctx.matrix.w, count)
    chosen, region = lowest_zeros(ctx.function(variant), count, start=start)
    shift = zero_shift([zero.value for zero in chosen])
    logger.info(f"{variant}: {count} собственных значений наименьшего модуля")
    return Spectrum(eigenvalues=tuple(chosen), region=region, variant=variant, shift=shift)


def tracked_spectrum(ctx: CharacteristicSet, variant: Variant, seeds) -> Spectrum:
    """Спектр из уточнённых начальных приближений (простые собственные значения)"""
    variant = Variant(variant)
    values = track_eigenvalues(ctx.function(variant), seeds)
    pad = 1.0 + 0.01 * float(np.max(np.abs(values)))
    region = Rectangle(
        float(values.real.min()) - pad,
        float(values.real.max()) + pad,
        float(values.imag.min()) - pad,
        float(values.imag.max()) + pad,
    )
    zeros = tuple(Zero(value=complex(v), multiplicity=1) for v in values)
    return Spectrum(eigenvalues=zeros, region=region, variant=variant, shift=zero_shift(values))


def track_eigenvalues(function: BatchFunction, seeds) -> np.ndarray:
    """Уточнение собственных значений из начальных приближений; возвращает значения в порядке seeds"""
    seeds = np.asarray(seeds, dtype=complex)
    if seeds.size == 0:
        return seeds.copy()
    gaps = np.full(seeds.size, np.inf)
    if seeds.size > 1:
        distance = np.abs(seeds[:, None] - seeds[None, :])
        np.fill_diagonal(distance, np.inf)
        gaps = distance.min(axis=1)
    limits = np.minimum(0.25 * gaps, 0.5 * np.maximum(1.0, np.abs(seeds)))
    roots, converged = newton_batch(function, seeds, step_limits=limits)
    if not np.all(converged):
        raise ConsistencyError(
            f"Отслеживание не сошлось для {int((~converged).sum())} значений из {seeds.size}"
        )
    if seeds.size > 1:
        distance = np.abs(roots[:, None] - roots[None, :])
        np.fill_diagonal(distance, np.inf)
        if np.min(distance) < 1e-8 * max(1.0, float(np.max(np.abs(roots)))):
            raise ConsistencyError("Два начальных приближения сошлись к одному значению")
    return roots


def pair_eigenvalues(candidate, target) -> np.ndarray:
    """Перестановка candidate, ближайшая к target (оптимальное назначение)"""
    candidate = np.asarray(candidate, dtype=complex)
    target = np.asarray(target, dtype=complex)
    cost = np.abs(candidate[:, None] - target[None, :]) ** 2
    rows, cols = linear_sum_assignment(cost)
    paired = np.empty(target.size, dtype=complex)
    paired[cols] = candidate[rows]
    return paired
