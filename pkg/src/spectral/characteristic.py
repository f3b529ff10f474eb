"""Характеристические функции Delta, Delta_jk и разложение Крамера матрицы Вейля"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.engine.integrator import endpoint_values
from src.errors import IntegrationError
from src.problem.models import InvolutionProblem, MatrixSLProblem, Variant
from src.problem.reduction import U, U_DAGGER, reduce_to_matrix

logger = logging.getLogger(__name__)

_BATCH = 512
_MAX_EXPONENT = 700.0


@dataclass(frozen=True)
class BoundaryMatrices:
    """A = U^H V(S) U, B = -U^H V(C) U (масштабированы на exp(-sigma)); M_cal = A^(-1) B"""

    lambdas: np.ndarray
    A: np.ndarray
    B: np.ndarray
    sigma: np.ndarray


def _det(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    return first[..., 0] * second[..., 1] - first[..., 1] * second[..., 0]


@dataclass(frozen=True)
class CharacteristicSet:
    problem: InvolutionProblem
    matrix: MatrixSLProblem

    @property
    def alpha(self) -> complex:
        return self.problem.alpha

    def boundary_matrices(self, lambdas) -> BoundaryMatrices:
        lambdas = np.atleast_1d(np.asarray(lambdas, dtype=complex))
        parts_a, parts_b, parts_sigma = [], [], []
        for start in range(0, lambdas.size, _BATCH):
            ends = endpoint_values(self.matrix, lambdas[start : start + _BATCH])
            T, Tperp = self.matrix.T, self.matrix.Tperp
            form_s = T @ ends.Sprime - Tperp @ ends.S
            form_c = T @ ends.Cprime - Tperp @ ends.C
            parts_a.append(U_DAGGER @ form_s @ U)
            parts_b.append(-(U_DAGGER @ form_c @ U))
            parts_sigma.append(ends.sigma)
        if not parts_a:
            empty = np.zeros((0, 2, 2), dtype=complex)
            return BoundaryMatrices(lambdas, empty, empty, np.zeros(0))
        return BoundaryMatrices(
            lambdas, np.concatenate(parts_a), np.concatenate(parts_b), np.concatenate(parts_sigma)
        )

    def scaled_components(self, lambdas) -> tuple[np.ndarray, np.ndarray]:
        """Значения, умноженные на exp(-2 sigma), и sigma для каждого lambda"""
        data = self.boundary_matrices(lambdas)
        a0, a1 = data.A[..., :, 0], data.A[..., :, 1]
        b0, b1 = data.B[..., :, 0], data.B[..., :, 1]
        values = np.stack(
            [_det(a0, a1), _det(b0, a1), _det(b1, a1), _det(a0, b0), _det(a0, b1)], axis=-1
        )
        return values, data.sigma

    def components(self, lambdas, *, scaled: bool = False) -> np.ndarray:
        """Массив (n, 5): Delta, Delta11, Delta12, Delta21, Delta22"""
        values, sigma = self.scaled_components(lambdas)
        if scaled:
            return values
        exponent = 2.0 * sigma
        if np.any(exponent > _MAX_EXPONENT):
            raise IntegrationError(
                "Значение характеристической функции не представимо без масштабирования",
                reached_x=1.0,
            )
        return values * np.exp(exponent)[:, None]

    def function(self, variant: Variant, *, scaled: bool = True) -> Callable[[np.ndarray], np.ndarray]:
        """Пакетная функция lambda -> значение выбранного определителя"""
        column = Variant(variant).index

        def evaluate(lambdas):
            return self.components(lambdas, scaled=scaled)[:, column]

        return evaluate

    def weyl_cramer(self, lam: complex) -> np.ndarray:
        """M_cal = U^H M U = A^(-1) B"""
        data = self.boundary_matrices([lam])
        return np.linalg.solve(data.A[0], data.B[0])


def characteristic_set(problem: InvolutionProblem) -> CharacteristicSet:
    return CharacteristicSet(problem=problem, matrix=reduce_to_matrix(problem))


def char_delta(ctx: CharacteristicSet, lam: complex) -> complex:
    """Delta(lambda) = det V(S(1, lambda))"""
    return complex(ctx.components([lam])[0, 0])


def char_components(ctx: CharacteristicSet, lam: complex) -> tuple[complex, ...]:
    return tuple(complex(v) for v in ctx.components([lam])[0])


def cramer_defect(ctx: CharacteristicSet, lam: complex, weyl: np.ndarray) -> float:
    """max |Delta * M_cal - [Delta_jk]| / ||[Delta_jk]|| для заданной матрицы Вейля"""
    values = ctx.components([lam], scaled=True)[0]
    cramer = np.array([[values[1], values[2]], [values[3], values[4]]])
    weyl_cal = U_DAGGER @ weyl @ U
    defect = np.max(np.abs(values[0] * weyl_cal - cramer))
    return float(defect / max(np.linalg.norm(cramer), np.finfo(float).tiny))
