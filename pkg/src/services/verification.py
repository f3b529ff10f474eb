"""Наборы численных проверок: общие для команды verify и тестов"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.engine.integrator import default_grid, integrate_adjoint, integrate_fundamental
from src.engine.weyl import adjoint_weyl_solution, weyl_solution
from src.errors import AnchorError, NearEigenvalueError, UsageError
from src.firstorder.anchor import find_anchor
from src.firstorder.system import reduce_first_order, riccati_residual, verify_equivalence
from src.problem.coefficients import CoefficientFunction
from src.problem.geometry import sector_geometry
from src.problem.models import InvolutionProblem, Variant
from src.problem.reduction import reduce_to_matrix
from src.spectral.asymptotics import (
    DEFAULT_RADII,
    SLOPE_BOUND,
    characteristic_deviation,
    decay_passes,
    decay_slope,
    fundamental_deviation,
    mapping_deviation,
    weyl_deviation,
)
from src.spectral.characteristic import characteristic_set, cramer_defect
from src.spectral.mappings import spectral_mapping_blocks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    metric: float
    threshold: float
    passed: bool

    @classmethod
    def at_most(cls, name: str, metric: float, threshold: float) -> "Check":
        return cls(name, float(metric), threshold, bool(np.isfinite(metric) and metric <= threshold))


def random_problem(rng: np.random.Generator, *, alpha: complex = 0.3, degree: int = 3) -> InvolutionProblem:
    """Задача со случайными вещественными полиномами p, q степени degree"""
    p = CoefficientFunction.polynomial(rng.uniform(-1.0, 1.0, degree + 1))
    q = CoefficientFunction.polynomial(rng.uniform(-1.0, 1.0, degree + 1))
    return InvolutionProblem(alpha=alpha, p=p, q=q)


def random_lambdas(rng: np.random.Generator, count: int, radius: float = 100.0) -> np.ndarray:
    modulus = radius * np.sqrt(rng.uniform(0.01, 1.0, count))
    return modulus * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


def _problems(problem: InvolutionProblem | None, rng, count: int) -> list[InvolutionProblem]:
    return [problem] if problem is not None else [random_problem(rng) for _ in range(count)]


def _relative_wronskian(Z, Zp, Y, Yp, target) -> float:
    value = Z @ Yp - Zp @ Y
    scale = 1.0 + np.linalg.norm(Z, axis=(-2, -1)) * np.linalg.norm(Yp, axis=(-2, -1))
    scale = scale + np.linalg.norm(Zp, axis=(-2, -1)) * np.linalg.norm(Y, axis=(-2, -1))
    return float(np.max(np.linalg.norm(value - target, axis=(-2, -1)) / scale))


def wronskian_suite(problem=None, *, seed: int = 0, **_) -> list[Check]:
    """<C*, S> = I и <S*, C> = -I на всей сетке"""
    rng = np.random.default_rng(seed)
    checks = []
    identity = np.eye(2)
    for i, item in enumerate(_problems(problem, rng, 5)):
        matrix = reduce_to_matrix(item)
        for lam in random_lambdas(rng, 5):
            direct = integrate_fundamental(matrix, lam)
            adjoint = integrate_adjoint(matrix, lam)
            first = _relative_wronskian(adjoint.C, adjoint.Cprime, direct.S, direct.Sprime, identity)
            second = _relative_wronskian(adjoint.S, adjoint.Sprime, direct.C, direct.Cprime, -identity)
            checks.append(Check.at_most(f"wronskian[{i}] lambda={lam:.4g}", max(first, second), 1e-8))
    return checks


def _pole_free(rng, matrix, count: int):
    """Пары (lambda, M, M*) вдали от полюсов матрицы Вейля"""
    found, attempts = [], 0
    while len(found) < count and attempts < 20 * count:
        attempts += 1
        lam = random_lambdas(rng, 1)[0]
        try:
            grid = np.array([0.0, 0.5, 1.0])
            direct = weyl_solution(matrix, lam, grid)
            adjoint = adjoint_weyl_solution(matrix, lam, grid)
        except NearEigenvalueError:
            continue
        found.append((lam, direct, adjoint))
    return found


def adjoint_suite(problem=None, *, seed: int = 0, **_) -> list[Check]:
    """M(lambda) = M*(lambda), M* = Phi*'(0) сопряжённой задачи"""
    rng = np.random.default_rng(seed)
    checks = []
    for i, item in enumerate(_problems(problem, rng, 2)):
        matrix = reduce_to_matrix(item)
        for lam, direct, adjoint in _pole_free(rng, matrix, 20 if problem is not None else 10):
            relative = np.linalg.norm(direct.M - adjoint.Phiprime[0]) / np.linalg.norm(direct.M)
            checks.append(Check.at_most(f"adjoint[{i}] lambda={lam:.4g}", relative, 1e-8))
    return checks


def cramer_suite(problem=None, *, seed: int = 0, **_) -> list[Check]:
    """Delta * U^H M U = [Delta_jk] при M из решения Вейля"""
    rng = np.random.default_rng(seed)
    problem = problem if problem is not None else random_problem(rng)
    ctx = characteristic_set(problem)
    checks = []
    for lam, direct, _ in _pole_free(rng, ctx.matrix, 20):
        checks.append(Check.at_most(f"cramer lambda={lam:.4g}", cramer_defect(ctx, lam, direct.Phiprime[0]), 1e-8))
    return checks


def _slope_check(name: str, radii, deviations) -> Check:
    slope = decay_slope(radii, deviations)
    return Check(name, slope, SLOPE_BOUND, decay_passes(radii, deviations))


def asymptotics_suite(problem=None, *, seed: int = 0, ray: int | None = None, **_) -> list[Check]:
    """Убывание отклонений от главных членов на специальных лучах"""
    rng = np.random.default_rng(seed)
    problem = problem if problem is not None else random_problem(rng, degree=1)
    matrix = reduce_to_matrix(problem)
    ctx = characteristic_set(problem)
    geometry = sector_geometry(matrix.weights)
    radii = np.array(DEFAULT_RADII)
    checks = []
    for index in range(4) if ray is None else [ray]:
        series: dict[str, Callable[[float], float]] = {
            "S(1)": lambda r: fundamental_deviation(matrix, geometry, index, r),
            "Phi(1/2)": lambda r: weyl_deviation(matrix, geometry, index, r),
        }
        for variant in Variant:
            series[f"{variant}"] = lambda r, v=variant: characteristic_deviation(ctx, geometry, index, r, v)
        for name, deviation in series.items():
            values = [deviation(r) for r in radii]
            checks.append(_slope_check(f"{name} ray={index}", radii, values))
    return checks


def firstorder_suite(problem=None, *, seed: int = 0, **_) -> list[Check]:
    """Якорь, тождество Риккати и эквивалентность системе первого порядка"""
    rng = np.random.default_rng(seed)
    items = [problem] if problem is not None else [random_problem(rng, degree=2) for _ in range(10)]
    checks = []
    for i, item in enumerate(items):
        matrix = reduce_to_matrix(item)
        offset = rng.uniform(1.0, 100.0) * np.exp(2j * np.pi * rng.uniform())
        try:
            anchor = find_anchor(matrix, sector_geometry(matrix.weights), grid=default_grid(65))
        except AnchorError as error:
            logger.warning(f"Задача {i}: {error}")
            checks.append(Check(f"anchor[{i}]", float(error.details().get("best_ratio", 0.0)), 1e-3, False))
            continue
        checks.append(Check(f"anchor[{i}]", anchor.min_ratio, 1e-3, anchor.min_ratio > 1e-3))
        system = reduce_first_order(matrix, anchor)
        checks.append(Check.at_most(f"riccati[{i}]", riccati_residual(system, matrix), 1e-6))
        lam = anchor.lambda_star + offset
        residual = verify_equivalence(matrix, anchor, lam)
        checks.append(Check.at_most(f"equivalence[{i}] lambda={lam:.4g}", residual, 1e-6))
    return checks


def mappings_suite(problem=None, *, seed: int = 0, ray: int | None = None, **_) -> list[Check]:
    """P11 = I, P12 = 0 для одинаковых задач; убывание P11 - I, P12 на лучах для разных"""
    rng = np.random.default_rng(seed)
    problem = problem if problem is not None else random_problem(rng, degree=1)
    other = InvolutionProblem(
        alpha=problem.alpha,
        p=CoefficientFunction.polynomial(np.concatenate([problem.p.coeffs[:1] + 1.0, problem.p.coeffs[1:]]))
        if problem.p.kind == "poly"
        else CoefficientFunction.grid(problem.p.nodes, problem.p.coeffs + 1.0),
        q=problem.q,
    )
    checks = []
    for lam in random_lambdas(rng, 3, radius=50.0):
        try:
            blocks = spectral_mapping_blocks(problem, problem, 0.5, lam)
        except NearEigenvalueError:
            continue
        defect = max(np.linalg.norm(blocks.P11 - np.eye(2)), np.linalg.norm(blocks.P12))
        checks.append(Check.at_most(f"identity lambda={lam:.4g}", defect, 1e-8))
    geometry = sector_geometry(reduce_to_matrix(problem).weights)
    radii = np.array(DEFAULT_RADII)
    for index in range(4) if ray is None else [ray]:
        values = [mapping_deviation(problem, other, geometry, index, r) for r in radii]
        checks.append(_slope_check(f"P-blocks ray={index}", radii, values))
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "asymptotics": asymptotics_suite,
    "wronskian": wronskian_suite,
    "adjoint": adjoint_suite,
    "cramer": cramer_suite,
    "firstorder": firstorder_suite,
    "mappings": mappings_suite,
}


def run_suite(name: str, problem: InvolutionProblem | None = None, *, seed: int = 0, ray: int | None = None):
    """Запуск набора проверок; возвращает (все ли прошли, список проверок)"""
    suite = SUITES.get(name)
    if suite is None:
        raise UsageError(f"Неизвестный набор проверок: {name}", known=sorted(SUITES))
    if ray is not None and ray not in range(4):
        raise UsageError(f"Номер луча должен быть 0..3, получено {ray}")
    logger.info(f"Набор проверок {name}")
    checks = suite(problem, seed=seed, ray=ray)
    passed = bool(checks) and all(check.passed for check in checks)
    failed = [check.name for check in checks if not check.passed]
    if failed:
        logger.warning(f"Не пройдены: {', '.join(failed)}")
    return passed, checks
