"""Отклонения от асимптотик на специальных лучах и проверка скорости их убывания"""
import logging

import numpy as np

from src.engine.integrator import integrate_fundamental
from src.engine.weyl import weyl_solution
from src.problem.geometry import SectorGeometry
from src.problem.models import InvolutionProblem, MatrixSLProblem, Variant
from src.spectral.characteristic import CharacteristicSet
from src.spectral.mappings import spectral_mapping_blocks

logger = logging.getLogger(__name__)

DEFAULT_RADII = tuple(float(r) for r in np.geomspace(20.0, 200.0, 8))
NOISE_FLOOR = 1e-9
SLOPE_BOUND = -0.9


def ray_point(geometry: SectorGeometry, ray_index: int, r: float) -> tuple[complex, np.ndarray]:
    """rho = r exp(i theta) и D = diag(d1, d2) на выбранном луче"""
    theta = geometry.rays[ray_index]
    d1, d2 = geometry.ray_branch(ray_index)
    return complex(r * np.exp(1j * theta)), np.array([d1, d2], dtype=complex)


def jk_factor(d: np.ndarray, variant: Variant) -> complex:
    """alpha_jk = d1/d2 + 1 при j = k и d1/d2 - 1 при j != k"""
    ratio = d[0] / d[1]
    if Variant(variant) in (Variant.L11, Variant.L22):
        return complex(ratio + 1.0)
    return complex(ratio - 1.0)


def leading_log(rho: complex, d: np.ndarray, variant: Variant) -> complex:
    """Логарифм главного члена: -exp(i rho (d1+d2)) / (4 i rho d2) или alpha_jk exp(i rho (d1+d2)) / 8"""
    phase = 1j * rho * (d[0] + d[1])
    if Variant(variant) is Variant.L:
        return complex(phase + np.log(-1.0 / (4j * rho * d[1])))
    return complex(phase + np.log(jk_factor(d, variant) / 8.0))


def fundamental_deviation(
    matrix: MatrixSLProblem, geometry: SectorGeometry, ray_index: int, r: float, x: float = 1.0
) -> float:
    """||2 (i rho D) exp(-i rho D x) S(x) - I||"""
    rho, d = ray_point(geometry, ray_index, r)
    solution = integrate_fundamental(matrix, rho**2, np.unique([0.0, x, 1.0]))
    S, _ = solution.s.at(x)
    normalizer = np.diag(2.0 * 1j * rho * d * np.exp(-1j * rho * d * x))
    return float(np.linalg.norm(normalizer @ S - np.eye(2)))


def weyl_deviation(
    matrix: MatrixSLProblem, geometry: SectorGeometry, ray_index: int, r: float, x: float = 0.5
) -> float:
    """||exp(i rho D x) Phi(x) - I||"""
    rho, d = ray_point(geometry, ray_index, r)
    weyl = weyl_solution(matrix, rho**2, np.unique([0.0, x, 1.0]))
    Phi, _ = weyl.phi.at(x)
    return float(np.linalg.norm(np.diag(np.exp(1j * rho * d * x)) @ Phi - np.eye(2)))


def characteristic_deviation(
    ctx: CharacteristicSet, geometry: SectorGeometry, ray_index: int, r: float, variant: Variant
) -> float:
    """|Delta / (главный член) - 1| в логарифмах, без переполнения"""
    rho, d = ray_point(geometry, ray_index, r)
    values, sigma = ctx.scaled_components([rho**2])
    value = values[0, Variant(variant).index]
    if value == 0:
        return float("inf")
    log_ratio = np.log(value) + 2.0 * sigma[0] - leading_log(rho, d, variant)
    return float(abs(np.exp(log_ratio) - 1.0))


def mapping_deviation(
    prob_a: InvolutionProblem | MatrixSLProblem,
    prob_b: InvolutionProblem | MatrixSLProblem,
    geometry: SectorGeometry,
    ray_index: int,
    r: float,
    x: float = 0.5,
) -> float:
    """max(||P11 - I||, ||P12||)"""
    rho, _ = ray_point(geometry, ray_index, r)
    blocks = spectral_mapping_blocks(prob_a, prob_b, x, rho**2)
    return float(max(np.linalg.norm(blocks.P11 - np.eye(2)), np.linalg.norm(blocks.P12)))


def decay_slope(radii, deviations) -> float:
    """Наклон прямой log(отклонение) от log(r)"""
    radii = np.asarray(radii, dtype=float)
    deviations = np.maximum(np.asarray(deviations, dtype=float), np.finfo(float).tiny)
    slope, _ = np.polyfit(np.log(radii), np.log(deviations), 1)
    return float(slope)


def decay_passes(radii, deviations, *, bound: float = SLOPE_BOUND, floor: float = NOISE_FLOOR) -> bool:
    """Убывание O(1/r): наклон не больше bound либо все отклонения уже ниже уровня шума"""
    deviations = np.asarray(deviations, dtype=float)
    if np.all(deviations < floor):
        return True
    return decay_slope(radii, deviations) <= bound
