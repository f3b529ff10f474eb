"""Точка lambda*, в которой C(x, lambda*) невырождена на всём [0, 1]"""
import logging
from dataclasses import dataclass

import numpy as np

from src.config import settings
from src.engine.integrator import default_grid, integrate_fundamental
from src.errors import AnchorError
from src.problem.geometry import SectorGeometry
from src.problem.models import MatrixSLProblem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NondegenerateAnchor:
    """X = C(., lambda*) на сетке; X и X' хранятся умноженными на exp(-log_scale * x)"""

    lambda_star: complex
    grid: np.ndarray
    X: np.ndarray
    Xprime: np.ndarray
    min_det: float
    min_ratio: float
    log_scale: float
    phi: float
    radius: float


def _log_cosh(values: np.ndarray) -> np.ndarray:
    values = np.abs(values)
    return values + np.log1p(np.exp(-2.0 * values)) - np.log(2.0)


def determinant_ratio(X, grid, lambda_star: complex, w, log_scale: float = 0.0) -> np.ndarray:
    """|det X(x)| / prod_k cosh(Im(rho d_k) x)

    Знаменатель - модуль роста det C при Q = 0; для невырожденного якоря отношение
    порядка единицы при любом r. X хранится умноженной на exp(-log_scale * x).
    """
    grid = np.asarray(grid, dtype=float)
    det = np.abs(X[..., 0, 0] * X[..., 1, 1] - X[..., 0, 1] * X[..., 1, 0])
    rho = np.sqrt(complex(lambda_star))
    growth = (rho * np.sqrt(np.asarray(w, dtype=complex))).imag
    log_envelope = _log_cosh(grid[:, None] * growth[None, :]).sum(axis=-1)
    with np.errstate(divide="ignore"):
        log_ratio = np.log(det) + 2.0 * log_scale * grid - log_envelope
    return np.exp(log_ratio)


def find_anchor(
    problem: MatrixSLProblem,
    geometry: SectorGeometry,
    *,
    phi: float | None = None,
    r0: float | None = None,
    r_max: float | None = None,
    delta: float | None = None,
    grid=None,
) -> NondegenerateAnchor:
    """lambda* = (r e^{i phi})^2 с phi внутри сектора; r удваивается, пока X не станет невырожденной"""
    phi = geometry.sector_midpoint(0) if phi is None else float(phi)
    radius = settings.ANCHOR_R0 if r0 is None else r0
    r_max = settings.ANCHOR_R_MAX if r_max is None else r_max
    delta = settings.ANCHOR_DELTA if delta is None else delta
    grid = default_grid() if grid is None else grid
    best = 0.0
    while radius <= r_max:
        lambda_star = complex((radius * np.exp(1j * phi)) ** 2)
        solution = integrate_fundamental(problem, lambda_star, grid, rescale=True)
        ratios = determinant_ratio(
            solution.C, solution.grid, lambda_star, problem.w, solution.log_scale
        )
        ratio = float(np.min(ratios))
        best = max(best, ratio)
        if ratio > delta:
            logger.info(f"Якорь lambda* = {lambda_star:.6g} при r = {radius}, отношение {ratio:.3e}")
            det = np.abs(np.linalg.det(solution.C))
            return NondegenerateAnchor(
                lambda_star=lambda_star,
                grid=solution.grid,
                X=solution.C,
                Xprime=solution.Cprime,
                min_det=float(np.min(det)),
                min_ratio=ratio,
                log_scale=solution.log_scale,
                phi=phi,
                radius=float(radius),
            )
        logger.debug(f"r = {radius}: отношение {ratio:.3e} не выше {delta}")
        radius *= 2.0
    raise AnchorError(
        f"Невырожденный якорь не найден до r = {r_max}", best_ratio=best, phi=phi
    )
