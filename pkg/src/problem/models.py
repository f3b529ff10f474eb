"""Постановки задач: скалярная задача с инволюцией и матричная задача Штурма-Лиувилля"""
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Callable

import numpy as np

from src.errors import AdmissibilityError, DegenerateWeightError, UsageError
from src.problem.coefficients import CoefficientFunction

# Матричный потенциал: массив x любой формы -> массив формы x.shape + (2, 2)
MatrixPotential = Callable[[np.ndarray], np.ndarray]


class Variant(StrEnum):
    """Пять краевых задач: L и L_jk"""

    L = "L"
    L11 = "L11"
    L12 = "L12"
    L21 = "L21"
    L22 = "L22"

    @property
    def index(self) -> int:
        return list(Variant).index(self)


def unsigned_zero(values):
    """Заменяет -0.0 на +0.0 в обеих частях: sqrt(-1 - 0j) = -1j, а нужна главная ветвь 1j"""
    if np.ndim(values) == 0:
        value = complex(values)
        return complex(value.real + 0.0, value.imag + 0.0)
    values = np.asarray(values, dtype=complex)
    result = np.empty(values.shape, dtype=complex)
    result.real = values.real + 0.0
    result.imag = values.imag + 0.0
    return result


def check_alpha(alpha: complex) -> complex:
    """Допустимые alpha: (-1, 1) или невещественные"""
    alpha = complex(alpha)
    if not np.isfinite(alpha.real) or not np.isfinite(alpha.imag):
        raise AdmissibilityError("alpha должно быть конечным", alpha=alpha)
    if alpha.imag == 0 and abs(alpha.real) >= 1:
        raise AdmissibilityError(
            f"alpha = {alpha.real} вне (-1, 1) ∪ (C \\ R)", alpha=alpha
        )
    return alpha


@dataclass(frozen=True)
class InvolutionProblem:
    """-alpha u''(x) - u''(-x) + p(x)u(x) + q(x)u(-x) = lambda u(x) на [-1, 1]"""

    alpha: complex
    p: CoefficientFunction = field(default_factory=CoefficientFunction.zero)
    q: CoefficientFunction = field(default_factory=CoefficientFunction.zero)
    bc: Variant = Variant.L

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        object.__setattr__(self, "bc", Variant(self.bc))

    @property
    def is_free(self) -> bool:
        """p = q = 0"""
        return self.p.is_zero and self.q.is_zero

    @property
    def is_real(self) -> bool:
        return (
            self.alpha.imag == 0
            and bool(np.all(self.p.coeffs.imag == 0))
            and bool(np.all(self.q.coeffs.imag == 0))
        )

    def with_variant(self, bc: Variant) -> "InvolutionProblem":
        return InvolutionProblem(alpha=self.alpha, p=self.p, q=self.q, bc=Variant(bc))

    def reflected(self) -> "InvolutionProblem":
        """Задача с коэффициентами p(-x), q(-x)"""
        return InvolutionProblem(
            alpha=self.alpha, p=self.p.reflected(), q=self.q.reflected(), bc=self.bc
        )


@dataclass(frozen=True)
class PolynomialMatrixPotential:
    """Q(x) = sum_k A_k x^k с матрицами A_k формы (2, 2)"""

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 3 or coeffs.shape[1:] != (2, 2):
            raise UsageError("Коэффициенты матричного полинома должны иметь форму (d+1, 2, 2)")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        result = np.zeros(x.shape + (2, 2), dtype=complex)
        for coeff in self.coeffs[::-1]:
            result = result * x[..., None, None] + coeff
        return result


@dataclass(frozen=True)
class TransposedPotential:
    """Q(x)^T: потенциал сопряжённого (строчного) уравнения"""

    base: MatrixPotential

    def __call__(self, x):
        return np.swapaxes(self.base(x), -1, -2)


@dataclass(frozen=True)
class MatrixSLProblem:
    """-Y'' + Q(x)Y = lambda W Y на [0, 1], Y'(0) = 0, T Y'(1) - T_perp Y(1) = 0"""

    potential: MatrixPotential
    weights: tuple[complex, complex]
    T: np.ndarray = field(default_factory=lambda: np.diag([1.0, 0.0]).astype(complex))
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        w1, w2 = (unsigned_zero(w) for w in self.weights)
        if w1 == 0 or w2 == 0:
            raise DegenerateWeightError("Вес W вырожден: w1 * w2 = 0")
        if abs(np.angle(w1 / w2)) < 1e-14:
            raise DegenerateWeightError(
                "arg w1 = arg w2: специальных лучей нет", w1=w1, w2=w2
            )
        object.__setattr__(self, "weights", (w1, w2))
        projector = np.asarray(self.T, dtype=complex)
        if projector.shape != (2, 2):
            raise UsageError("T должен быть матрицей 2x2")
        if not (
            np.allclose(projector, projector.conj().T, atol=1e-12)
            and np.allclose(projector @ projector, projector, atol=1e-12)
        ):
            raise UsageError("T должен быть ортогональным проектором")
        object.__setattr__(self, "T", projector)
        points = sorted({float(b) for b in self.breakpoints if 0.0 < b < 1.0})
        object.__setattr__(self, "breakpoints", tuple(points))

    @classmethod
    def polynomial(cls, coeffs, weights, T=None) -> "MatrixSLProblem":
        T = np.diag([1.0, 0.0]) if T is None else T
        return cls(potential=PolynomialMatrixPotential(coeffs), weights=tuple(weights), T=T)

    @property
    def W(self) -> np.ndarray:
        return np.diag(np.array(self.weights, dtype=complex))

    @property
    def w(self) -> np.ndarray:
        return np.array(self.weights, dtype=complex)

    @property
    def Tperp(self) -> np.ndarray:
        return np.eye(2, dtype=complex) - self.T

    def Q(self, x):
        return self.potential(x)

    def transposed(self) -> "MatrixSLProblem":
        """Задача с потенциалом Q^T (строчное уравнение -Z'' + ZQ = lambda ZW)"""
        return MatrixSLProblem(
            potential=TransposedPotential(self.potential),
            weights=self.weights,
            T=self.T.T.copy(),
            breakpoints=self.breakpoints,
        )
