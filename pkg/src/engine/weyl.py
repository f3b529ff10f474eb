"""Матрица Вейля M = -V(S)^(-1) V(C) и решение Вейля Phi"""
import logging

import numpy as np

from src.config import settings
from src.engine.integrator import default_grid, endpoint_values, propagate
from src.engine.solutions import WeylData
from src.errors import NearEigenvalueError
from src.problem.models import MatrixSLProblem

logger = logging.getLogger(__name__)


def boundary_form(problem: MatrixSLProblem, value: np.ndarray, derivative: np.ndarray) -> np.ndarray:
    """V(Y) = T Y'(1) - T_perp Y(1)"""
    return problem.T @ derivative - problem.Tperp @ value


def check_invertible(form: np.ndarray, lam: complex) -> None:
    det_abs = float(np.abs(np.linalg.det(form)))
    scale = float(np.linalg.norm(form)) ** 2
    if det_abs < settings.SINGULARITY_THRESHOLD * scale:
        raise NearEigenvalueError(
            f"lambda = {lam} близко к собственному значению: |det V(S)| = {det_abs:.3e}",
            det_abs=det_abs,
            lam=complex(lam),
        )


def weyl_matrix(problem: MatrixSLProblem, lam: complex) -> np.ndarray:
    """M(lambda) по значениям C, S в x = 1 (масштаб сокращается)"""
    ends = endpoint_values(problem, [lam])
    form_s = boundary_form(problem, ends.S[0], ends.Sprime[0])
    form_c = boundary_form(problem, ends.C[0], ends.Cprime[0])
    check_invertible(form_s, lam)
    return -np.linalg.solve(form_s, form_c)


def weyl_solution(problem: MatrixSLProblem, lam: complex, grid=None) -> WeylData:
    """M из V(S), V(C); Phi = Psi Psi(0)^(-1), где Psi идёт от x = 1 с Psi(1) = T, Psi'(1) = T_perp"""
    grid = default_grid() if grid is None else grid
    M = weyl_matrix(problem, lam)
    backward = propagate(problem, [lam], grid, problem.T, problem.Tperp, backward=True)
    psi, psi_prime = backward.value[0], backward.derivative[0]
    start = np.linalg.inv(psi[0])
    factor = np.exp(-backward.sigma[0] * backward.grid)[:, None, None]
    phi = factor * (psi @ start)
    phi_prime = factor * (psi_prime @ start)
    phi[0] = np.eye(2)
    logger.debug(
        f"Вейль при lambda={lam}: |M - Phi'(0)| = {np.linalg.norm(M - phi_prime[0]):.2e}"
    )
    return WeylData(lam=complex(lam), grid=backward.grid, M=M, Phi=phi, Phiprime=phi_prime)


def adjoint_weyl_solution(problem: MatrixSLProblem, lam: complex, grid=None) -> WeylData:
    """M*, Phi* строчного уравнения: транспонирование данных задачи с Q^T"""
    transposed = weyl_solution(problem.transposed(), lam, grid)
    return WeylData(
        lam=transposed.lam,
        grid=transposed.grid,
        M=transposed.M.T.copy(),
        Phi=np.swapaxes(transposed.Phi, -1, -2),
        Phiprime=np.swapaxes(transposed.Phiprime, -1, -2),
        kind="row",
    )
