"""Сведение задачи с инволюцией к матричной задаче Штурма-Лиувилля и обратное отображение"""
import logging
from dataclasses import dataclass

import numpy as np

from src.problem.coefficients import CoefficientFunction
from src.problem.models import InvolutionProblem, MatrixSLProblem, check_alpha, unsigned_zero

logger = logging.getLogger(__name__)

# Y(x) = U Z(1 - x)
U = np.array([[1.0, 1.0], [-1.0, 1.0]], dtype=complex) / np.sqrt(2.0)
U_DAGGER = U.conj().T
CAL_T = np.diag([1.0, 0.0]).astype(complex)


def weight_from_alpha(alpha: complex) -> tuple[complex, complex]:
    """w_j = 1 / (alpha + (-1)^(j+1))"""
    alpha = check_alpha(alpha)
    return unsigned_zero(1.0 / (alpha + 1.0)), unsigned_zero(1.0 / (alpha - 1.0))


def involution_weight(alpha: complex) -> np.ndarray:
    """Матрица [[alpha, 1], [1, alpha]]^(-1) системы для (u(x), u(-x))"""
    alpha = check_alpha(alpha)
    return np.linalg.inv(np.array([[alpha, 1.0], [1.0, alpha]], dtype=complex))


@dataclass(frozen=True)
class ReducedPotential:
    """Q(x) = U W_inv(alpha) [[p(-t), q(-t)], [q(t), p(t)]] U^H при t = 1 - x"""

    alpha: complex
    p: CoefficientFunction
    q: CoefficientFunction

    def __call__(self, x):
        t = 1.0 - np.asarray(x, dtype=float)
        block = np.empty(t.shape + (2, 2), dtype=complex)
        block[..., 0, 0] = self.p(-t)
        block[..., 0, 1] = self.q(-t)
        block[..., 1, 0] = self.q(t)
        block[..., 1, 1] = self.p(t)
        left = U @ involution_weight(self.alpha)
        return left @ block @ U_DAGGER


def reduce_to_matrix(problem: InvolutionProblem) -> MatrixSLProblem:
    """Матричная задача (Q, W, T) для InvolutionProblem"""
    weights = weight_from_alpha(problem.alpha)
    nodes = set(problem.p.breakpoints) | set(problem.q.breakpoints)
    breakpoints = tuple(sorted({1.0 - abs(t) for t in nodes}))
    logger.debug(f"Сведение alpha={problem.alpha}: W=diag{weights}, изломов {len(breakpoints)}")
    return MatrixSLProblem(
        potential=ReducedPotential(problem.alpha, problem.p, problem.q),
        weights=weights,
        T=CAL_T,
        breakpoints=breakpoints,
    )


def recover_coefficients(matrix: MatrixSLProblem, alpha: complex, t) -> dict[str, np.ndarray]:
    """p(t), q(t), p(-t), q(-t) при t из [0, 1] по значениям Q(1 - t)"""
    alpha = check_alpha(alpha)
    t = np.asarray(t, dtype=float)
    unpacking = np.array([[alpha, 1.0], [1.0, alpha]], dtype=complex)
    block = unpacking @ (U_DAGGER @ matrix.Q(1.0 - t) @ U)
    return {
        "p": block[..., 1, 1],
        "q": block[..., 1, 0],
        "p_reflected": block[..., 0, 0],
        "q_reflected": block[..., 0, 1],
    }
