"""Интегрирование матричного уравнения -Y'' + Q(x)Y = lambda W Y пакетом по lambda"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from src.config import settings
from src.engine.solutions import AdjointSolutions, FundamentalSolutions, SolutionSample
from src.errors import IntegrationError, UsageError
from src.problem.models import MatrixSLProblem

logger = logging.getLogger(__name__)

_IDENTITY = np.eye(2, dtype=complex)
_ZERO = np.zeros((2, 2), dtype=complex)


def default_grid(points: int | None = None) -> np.ndarray:
    return np.linspace(0.0, 1.0, points or settings.GRID_POINTS)


def check_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise UsageError("Сетка должна содержать хотя бы две точки")
    if abs(grid[0]) > 1e-12 or abs(grid[-1] - 1.0) > 1e-12:
        raise UsageError("Сетка должна покрывать [0, 1]")
    if np.any(np.diff(grid) <= 0):
        raise UsageError("Сетка должна строго возрастать")
    grid = grid.copy()
    grid[0], grid[-1] = 0.0, 1.0
    return grid


def growth_rate(problem: MatrixSLProblem, lambdas) -> np.ndarray:
    """max_k |Im(rho d_k)|: показатель роста решений"""
    rho = np.sqrt(np.asarray(lambdas, dtype=complex))
    d = np.sqrt(problem.w)
    return np.abs((rho[..., None] * d).imag).max(axis=-1)


@dataclass(frozen=True)
class Propagation:
    """Пакет решений; value и derivative умножены на exp(-sigma * s), s - пройденный путь"""

    lambdas: np.ndarray
    grid: np.ndarray
    value: np.ndarray
    derivative: np.ndarray
    sigma: np.ndarray
    backward: bool


def propagate(
    problem: MatrixSLProblem,
    lambdas,
    grid,
    y0,
    yp0,
    *,
    backward: bool = False,
    rescale: bool = True,
    rtol: float | None = None,
    atol: float | None = None,
) -> Propagation:
    """Решает задачу Коши для всех lambda одним вызовом solve_ivp на каждом гладком участке"""
    lambdas = np.atleast_1d(np.asarray(lambdas, dtype=complex))
    grid = check_grid(grid)
    y0 = np.asarray(y0, dtype=complex)
    yp0 = np.asarray(yp0, dtype=complex)
    n, k = lambdas.size, y0.shape[1]
    rtol = rtol or settings.ODE_RTOL
    atol = atol or settings.ODE_ATOL

    if rescale:
        sigma = np.maximum(growth_rate(problem, lambdas) - settings.RESCALE_THRESHOLD, 0.0)
    else:
        sigma = np.zeros(n)
    sign = -1.0 if backward else 1.0
    damping = sign * sigma[:, None, None]
    spectral = lambdas[:, None, None] * problem.w[None, :, None]
    half = n * 2 * k

    def rhs(x, y):
        z = y[:half].reshape(n, 2, k)
        p = y[half:].reshape(n, 2, k)
        dz = p - damping * z
        dp = problem.Q(x) @ z - spectral * z - damping * p
        return np.concatenate([dz.ravel(), dp.ravel()])

    nodes = [0.0, *problem.breakpoints, 1.0]
    segments = list(zip(nodes[:-1], nodes[1:]))
    if backward:
        segments = [(b, a) for a, b in reversed(segments)]

    value = np.empty((n, grid.size, 2, k), dtype=complex)
    derivative = np.empty_like(value)
    origin = grid.size - 1 if backward else 0
    value[:, origin] = y0
    derivative[:, origin] = yp0
    state = np.concatenate(
        [np.broadcast_to(y0, (n, 2, k)).ravel(), np.broadcast_to(yp0, (n, 2, k)).ravel()]
    )

    evaluations = 0
    for start, end in segments:
        if backward:
            indices = np.nonzero((grid >= end) & (grid < start))[0][::-1]
        else:
            indices = np.nonzero((grid > start) & (grid <= end))[0]
        t_eval = list(grid[indices])
        if not t_eval or abs(t_eval[-1] - end) > 1e-15:
            t_eval.append(end)
        solution = solve_ivp(
            rhs, (start, end), state, method="DOP853", t_eval=t_eval, rtol=rtol, atol=atol
        )
        evaluations += solution.nfev
        if not solution.success or solution.y.shape[1] != len(t_eval):
            reached = float(solution.t[-1]) if solution.t.size else start
            raise IntegrationError(
                f"Интегрирование остановилось: {solution.message}", reached_x=reached
            )
        samples = solution.y.T
        for column, index in enumerate(indices):
            value[:, index] = samples[column, :half].reshape(n, 2, k)
            derivative[:, index] = samples[column, half:].reshape(n, 2, k)
        state = samples[-1]

    if not (np.all(np.isfinite(value)) and np.all(np.isfinite(derivative))):
        raise IntegrationError("Переполнение при интегрировании", reached_x=1.0)
    logger.debug(f"Интегрирование {n} значений lambda: {evaluations} вычислений правой части")
    return Propagation(lambdas, grid, value, derivative, sigma, backward)


@dataclass(frozen=True)
class EndpointValues:
    """C(1), C'(1), S(1), S'(1), умноженные на exp(-sigma)"""

    lambdas: np.ndarray
    C: np.ndarray
    Cprime: np.ndarray
    S: np.ndarray
    Sprime: np.ndarray
    sigma: np.ndarray


def endpoint_values(problem: MatrixSLProblem, lambdas, *, rescale: bool = True) -> EndpointValues:
    y0 = np.hstack([_IDENTITY, _ZERO])
    yp0 = np.hstack([_ZERO, _IDENTITY])
    result = propagate(problem, lambdas, np.array([0.0, 1.0]), y0, yp0, rescale=rescale)
    value, derivative = result.value[:, -1], result.derivative[:, -1]
    return EndpointValues(
        lambdas=result.lambdas,
        C=value[..., :2],
        Cprime=derivative[..., :2],
        S=value[..., 2:],
        Sprime=derivative[..., 2:],
        sigma=result.sigma,
    )


def integrate_fundamental(
    problem: MatrixSLProblem, lam: complex, grid=None, *, rescale: bool = False
) -> FundamentalSolutions:
    """C(x, lambda), S(x, lambda) с производными на сетке"""
    grid = default_grid() if grid is None else grid
    y0 = np.hstack([_IDENTITY, _ZERO])
    yp0 = np.hstack([_ZERO, _IDENTITY])
    result = propagate(problem, [lam], grid, y0, yp0, rescale=rescale)
    value, derivative = result.value[0], result.derivative[0]
    return FundamentalSolutions(
        lam=complex(lam),
        grid=result.grid,
        C=value[..., :2],
        Cprime=derivative[..., :2],
        S=value[..., 2:],
        Sprime=derivative[..., 2:],
        log_scale=float(result.sigma[0]),
    )


def integrate_adjoint(problem: MatrixSLProblem, lam: complex, grid=None) -> AdjointSolutions:
    """C*, S* через транспонированный потенциал: C* = (C для Q^T)^T"""
    transposed = integrate_fundamental(problem.transposed(), lam, grid)
    return AdjointSolutions(
        lam=transposed.lam,
        grid=transposed.grid,
        C=np.swapaxes(transposed.C, -1, -2),
        Cprime=np.swapaxes(transposed.Cprime, -1, -2),
        S=np.swapaxes(transposed.S, -1, -2),
        Sprime=np.swapaxes(transposed.Sprime, -1, -2),
    )


def _check_pair(z: SolutionSample, y: SolutionSample) -> None:
    if z.lam != y.lam:
        raise UsageError(f"Решения взяты при разных lambda: {z.lam} и {y.lam}")
    if z.kind != "row" or y.kind != "column":
        raise UsageError("Вронскиан <Z, Y> определён для строчного Z и столбцового Y")


def wronskian(z: SolutionSample, y: SolutionSample, x: float) -> np.ndarray:
    """<Z, Y> = Z Y' - Z' Y в точке x"""
    _check_pair(z, y)
    z_value, z_derivative = z.at(x)
    y_value, y_derivative = y.at(x)
    return z_value @ y_derivative - z_derivative @ y_value


def wronskian_profile(z: SolutionSample, y: SolutionSample) -> np.ndarray:
    """<Z, Y> во всех точках общей сетки"""
    _check_pair(z, y)
    if z.grid.shape != y.grid.shape or np.any(np.abs(z.grid - y.grid) > 1e-12):
        raise UsageError("Решения заданы на разных сетках")
    return z.value @ y.derivative - z.derivative @ y.value
