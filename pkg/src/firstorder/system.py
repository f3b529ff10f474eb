"""Сведение -W^(-1) Y'' + Q^ Y = lambda Y к системе первого порядка и её проверка"""
import logging
from dataclasses import dataclass

import numpy as np

from src.config import settings
from src.engine.integrator import integrate_fundamental
from src.errors import AnchorError, UsageError
from src.firstorder.anchor import NondegenerateAnchor, determinant_ratio
from src.problem.models import MatrixSLProblem, unsigned_zero

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FirstOrderSystem:
    lambda_star: complex
    grid: np.ndarray
    hat_w: np.ndarray
    hat_d: np.ndarray
    hat_Q: np.ndarray
    U: np.ndarray
    block_Q0: np.ndarray
    block_Q: np.ndarray
    eigenvectors: np.ndarray
    diagonal_Q0: np.ndarray
    diagonal_Q: np.ndarray

    def mu(self, lam: complex) -> complex:
        """mu = sqrt(lambda - lambda*), главная ветвь"""
        mu = complex(np.sqrt(complex(lam) - self.lambda_star))
        if mu == 0:
            raise UsageError("Эквивалентность требует lambda != lambda* (mu != 0)")
        return mu

    def split(self, lam: complex, Y: np.ndarray, Yprime: np.ndarray, U: np.ndarray | None = None):
        """(Y1, Y2) = (Y, -mu^(-1)(D^ Y' - U Y))"""
        mu = self.mu(lam)
        U = self.U if U is None else U
        D = np.diag(self.hat_d)
        return Y, -(D @ Yprime - U @ Y) / mu

    def to_rows(self) -> list[dict[str, float]]:
        rows = []
        for index, x in enumerate(self.grid):
            row = {"x": float(x)}
            for j in range(2):
                for k in range(2):
                    value = complex(self.U[index, j, k])
                    row[f"u{j + 1}{k + 1}_re"] = value.real
                    row[f"u{j + 1}{k + 1}_im"] = value.imag
            rows.append(row)
        return rows


def hat_weights(problem: MatrixSLProblem) -> tuple[np.ndarray, np.ndarray]:
    """w^ = 1/w и d^ = sqrt(w^) на главной ветви"""
    hat_w = unsigned_zero(1.0 / problem.w)
    return hat_w, np.sqrt(hat_w)


def _nondegenerate(problem: MatrixSLProblem, lambda_star: complex, grid, X, log_scale: float) -> None:
    ratios = determinant_ratio(X, grid, lambda_star, problem.w, log_scale)
    if np.min(ratios) < settings.SINGULARITY_THRESHOLD:
        raise AnchorError(
            f"X(x, lambda*) вырождена в точке x = {grid[np.argmin(ratios)]:.6f}",
            lambda_star=lambda_star,
        )


def u_tables(problem: MatrixSLProblem, lambda_star: complex, grid) -> tuple[np.ndarray, np.ndarray]:
    """U = D^ X' X^(-1) и U' = D^ X'' X^(-1) - U D^(-1) U для X = C(., lambda*)

    X'' = (Q - lambda* W) X берётся из самого уравнения; множитель масштаба сокращается.
    """
    _, hat_d = hat_weights(problem)
    solution = integrate_fundamental(problem, lambda_star, grid, rescale=True)
    _nondegenerate(problem, lambda_star, solution.grid, solution.C, solution.log_scale)
    D, D_inv = np.diag(hat_d), np.diag(1.0 / hat_d)
    X_inv = np.linalg.inv(solution.C)
    U = D @ solution.Cprime @ X_inv
    Xsecond = (problem.Q(solution.grid) - lambda_star * problem.W) @ solution.C
    Uprime = D @ Xsecond @ X_inv - U @ D_inv @ U
    return U, Uprime


def reduce_first_order(problem: MatrixSLProblem, anchor: NondegenerateAnchor) -> FirstOrderSystem:
    """Таблицы системы Q0 Y' + Q(x) Y = mu Y на сетке якоря"""
    hat_w, hat_d = hat_weights(problem)
    _nondegenerate(problem, anchor.lambda_star, anchor.grid, anchor.X, anchor.log_scale)
    D, D_inv = np.diag(hat_d), np.diag(1.0 / hat_d)
    U = D @ anchor.Xprime @ np.linalg.inv(anchor.X)
    hat_Q = np.diag(hat_w) @ problem.Q(anchor.grid)

    zero = np.zeros((2, 2), dtype=complex)
    block_Q0 = np.block([[zero, D], [-D, zero]])
    block_Q = np.zeros((anchor.grid.size, 4, 4), dtype=complex)
    block_Q[:, :2, 2:] = D @ U @ D_inv
    block_Q[:, 2:, :2] = U
    # собственные значения block_Q0 равны +-i d^_k
    eigenvalues, vectors = np.linalg.eig(block_Q0)
    vectors_inv = np.linalg.inv(vectors)
    logger.debug(f"Собственные значения Q0: {np.round(eigenvalues, 12)}")
    return FirstOrderSystem(
        lambda_star=anchor.lambda_star,
        grid=anchor.grid,
        hat_w=hat_w,
        hat_d=hat_d,
        hat_Q=hat_Q,
        U=U,
        block_Q0=block_Q0,
        block_Q=block_Q,
        eigenvectors=vectors,
        diagonal_Q0=np.diag(eigenvalues),
        diagonal_Q=vectors_inv @ block_Q @ vectors,
    )


def riccati_residual(system: FirstOrderSystem, problem: MatrixSLProblem, points=None) -> float:
    """max ||U' - (D^(-1)(Q^ - lambda* I) - U D^(-1) U)|| / (||U'|| + 1)"""
    grid = system.grid if points is None else points
    U, Uprime = u_tables(problem, system.lambda_star, grid)
    D_inv = np.diag(1.0 / system.hat_d)
    hat_Q = np.diag(system.hat_w) @ problem.Q(np.asarray(grid, dtype=float))
    expected = D_inv @ (hat_Q - system.lambda_star * np.eye(2)) - U @ D_inv @ U
    errors = np.linalg.norm(Uprime - expected, axis=(1, 2)) / (np.linalg.norm(Uprime, axis=(1, 2)) + 1.0)
    return float(np.max(errors))


def verify_equivalence(
    problem: MatrixSLProblem, anchor: NondegenerateAnchor, lam: complex, grid=None
) -> float:
    """Наибольшая относительная невязка уравнений -D^Y1' + UY1 = mu Y2 и D^Y2' + D^UD^(-1)Y2 = mu Y1"""
    if complex(lam) == anchor.lambda_star:
        raise UsageError("lambda совпадает с lambda*: mu = 0")
    system = reduce_first_order(problem, anchor)
    points = anchor.grid if grid is None else grid
    mu = system.mu(lam)
    D, D_inv = np.diag(system.hat_d), np.diag(1.0 / system.hat_d)

    U, Uprime = u_tables(problem, anchor.lambda_star, points)
    solution = integrate_fundamental(problem, lam, points)
    Y = np.concatenate([solution.C, solution.S], axis=-1)
    Yprime = np.concatenate([solution.Cprime, solution.Sprime], axis=-1)
    Ysecond = (problem.Q(solution.grid) - lam * problem.W) @ Y
    Y1, Y2 = system.split(lam, Y, Yprime, U)

    first = -D @ Yprime + U @ Y1 - mu * Y2
    first_scale = np.linalg.norm(mu * Y2, axis=(1, 2)) + np.linalg.norm(U @ Y1, axis=(1, 2))
    Y2_prime = -(D @ Ysecond - Uprime @ Y - U @ Yprime) / mu
    coupling = D @ U @ D_inv @ Y2
    second = D @ Y2_prime + coupling - mu * Y1
    second_scale = (
        np.linalg.norm(mu * Y1, axis=(1, 2))
        + np.linalg.norm(coupling, axis=(1, 2))
        + np.linalg.norm(D @ Y2_prime, axis=(1, 2))
    )
    residual = max(
        float(np.max(np.linalg.norm(first, axis=(1, 2)) / first_scale)),
        float(np.max(np.linalg.norm(second, axis=(1, 2)) / second_scale)),
    )
    logger.debug(f"Невязка эквивалентности при lambda = {lam}: {residual:.3e}")
    return residual
