"""Коэффициенты p, q на [-1, 1]: полином или кусочно-линейная сетка"""
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.polynomial import polynomial as npoly

from src.errors import UsageError


@dataclass(frozen=True)
class CoefficientFunction:
    """Комплекснозначная функция на [-1, 1]"""

    kind: Literal["poly", "grid"]
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=complex))
    nodes: np.ndarray | None = None

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        object.__setattr__(self, "coeffs", coeffs)
        if self.kind == "poly":
            if coeffs.ndim != 1 or coeffs.size == 0:
                raise UsageError("Полиномиальный коэффициент должен задаваться непустым вектором")
            if self.nodes is not None:
                raise UsageError("У полиномиального коэффициента не бывает узлов")
            return
        if self.kind != "grid":
            raise UsageError(f"Неизвестный вид коэффициента: {self.kind}")
        if self.nodes is None:
            raise UsageError("Сеточный коэффициент требует узлов")
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.shape != coeffs.shape or nodes.size < 2:
            raise UsageError("Число узлов и значений сетки должно совпадать и быть не меньше 2")
        if np.any(np.diff(nodes) <= 0):
            raise UsageError("Узлы сетки должны строго возрастать")
        if abs(nodes[0] + 1.0) > 1e-12 or abs(nodes[-1] - 1.0) > 1e-12:
            raise UsageError("Сетка должна покрывать [-1, 1]")

    @classmethod
    def polynomial(cls, coeffs) -> "CoefficientFunction":
        """Полином по возрастающим степеням"""
        return cls(kind="poly", coeffs=np.asarray(coeffs, dtype=complex))

    @classmethod
    def constant(cls, value: complex) -> "CoefficientFunction":
        return cls.polynomial([value])

    @classmethod
    def zero(cls) -> "CoefficientFunction":
        return cls.constant(0.0)

    @classmethod
    def grid(cls, nodes, values) -> "CoefficientFunction":
        return cls(kind="grid", coeffs=np.asarray(values, dtype=complex), nodes=np.asarray(nodes, dtype=float))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "poly":
            return npoly.polyval(t, self.coeffs)
        # np.interp принимает комплексные значения
        return np.interp(np.clip(t, -1.0, 1.0), self.nodes, self.coeffs)

    def reflected(self) -> "CoefficientFunction":
        """Функция t -> f(-t)"""
        if self.kind == "poly":
            signs = (-1.0) ** np.arange(self.coeffs.size)
            return CoefficientFunction.polynomial(self.coeffs * signs)
        return CoefficientFunction.grid(-self.nodes[::-1], self.coeffs[::-1])

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.coeffs == 0))

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Точки излома на [-1, 1] (только для сетки)"""
        if self.kind == "poly":
            return ()
        return tuple(float(t) for t in self.nodes[1:-1])

    def to_dict(self) -> dict:
        pairs = [{"re": float(c.real), "im": float(c.imag)} for c in self.coeffs]
        if self.kind == "poly":
            return {"kind": "poly", "coeffs": pairs}
        return {"kind": "grid", "nodes": [float(t) for t in self.nodes], "values": pairs}
