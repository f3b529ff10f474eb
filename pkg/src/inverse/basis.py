"""Конечномерное пространство поиска для p и q"""
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from src.errors import UsageError
from src.problem.coefficients import CoefficientFunction
from src.problem.models import InvolutionProblem, Variant


@dataclass(frozen=True)
class CoefficientBasis:
    """Параметры: сначала p, затем q (коэффициенты полинома или значения в узлах)"""

    kind: Literal["poly", "grid"]
    size: int
    params: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.kind not in ("poly", "grid"):
            raise UsageError(f"Неизвестный базис: {self.kind}")
        if self.size < (1 if self.kind == "poly" else 2):
            raise UsageError(f"Слишком маленький базис {self.kind}:{self.size}")
        params = np.zeros(2 * self.size, dtype=complex) if self.params is None else self.params
        params = np.asarray(params, dtype=complex).ravel()
        if params.size != 2 * self.size:
            raise UsageError(f"Ожидалось {2 * self.size} параметров, получено {params.size}")
        if not np.all(np.isfinite(params)):
            raise UsageError("Параметры базиса должны быть конечными")
        object.__setattr__(self, "params", params)

    @classmethod
    def parse(cls, text: str, params=None) -> "CoefficientBasis":
        """'poly:d' (степень d) или 'grid:n' (n узлов)"""
        kind, _, value = text.partition(":")
        try:
            number = int(value)
        except ValueError as error:
            raise UsageError(f"Некорректное описание базиса: {text}") from error
        if kind == "poly":
            return cls("poly", number + 1, params)
        if kind == "grid":
            return cls("grid", number, params)
        raise UsageError(f"Некорректное описание базиса: {text}")

    @property
    def label(self) -> str:
        return f"poly:{self.size - 1}" if self.kind == "poly" else f"grid:{self.size}"

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.size)

    def with_params(self, params) -> "CoefficientBasis":
        return CoefficientBasis(self.kind, self.size, params)

    def _function(self, values: np.ndarray) -> CoefficientFunction:
        if self.kind == "poly":
            return CoefficientFunction.polynomial(values)
        return CoefficientFunction.grid(self.nodes, values)

    def coefficients(self) -> tuple[CoefficientFunction, CoefficientFunction]:
        return self._function(self.params[: self.size]), self._function(self.params[self.size :])

    def to_problem(self, alpha: complex, bc: Variant = Variant.L) -> InvolutionProblem:
        p, q = self.coefficients()
        return InvolutionProblem(alpha=alpha, p=p, q=q, bc=bc)

    def reflected(self) -> "CoefficientBasis":
        """Параметры для p(-x), q(-x)"""
        if self.kind == "poly":
            signs = np.tile((-1.0) ** np.arange(self.size), 2)
            return self.with_params(self.params * signs)
        p, q = self.params[: self.size], self.params[self.size :]
        return self.with_params(np.concatenate([p[::-1], q[::-1]]))

    def sup_distance(self, other: "CoefficientBasis", points: int = 401) -> float:
        """max по [-1, 1] отклонения p и q"""
        t = np.linspace(-1.0, 1.0, points)
        ours, theirs = self.coefficients(), other.coefficients()
        return float(max(np.max(np.abs(a(t) - b(t))) for a, b in zip(ours, theirs)))

    def to_vector(self, real: bool) -> np.ndarray:
        if real:
            return self.params.real.copy()
        return np.concatenate([self.params.real, self.params.imag])

    def from_vector(self, vector, real: bool) -> "CoefficientBasis":
        vector = np.asarray(vector, dtype=float)
        if real:
            return self.with_params(vector)
        half = vector.size // 2
        return self.with_params(vector[:half] + 1j * vector[half:])
