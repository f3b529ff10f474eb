"""Неизменяемые записи с решениями на сетке"""
from dataclasses import dataclass
from typing import Literal

import numpy as np

from src.errors import UsageError


@dataclass(frozen=True)
class SolutionSample:
    """Матричное решение и его производная на сетке при фиксированном lambda"""

    lam: complex
    grid: np.ndarray
    value: np.ndarray
    derivative: np.ndarray
    kind: Literal["column", "row"] = "column"

    def index_of(self, x: float) -> int:
        index = int(np.argmin(np.abs(self.grid - x)))
        if abs(self.grid[index] - x) > 1e-12:
            raise UsageError(f"Точка x={x} не принадлежит сетке решения")
        return index

    def at(self, x: float) -> tuple[np.ndarray, np.ndarray]:
        index = self.index_of(x)
        return self.value[index], self.derivative[index]


@dataclass(frozen=True)
class FundamentalSolutions:
    """C, S с производными; при log_scale > 0 хранятся значения, умноженные на exp(-log_scale * x)"""

    lam: complex
    grid: np.ndarray
    C: np.ndarray
    Cprime: np.ndarray
    S: np.ndarray
    Sprime: np.ndarray
    log_scale: float = 0.0

    @property
    def c(self) -> SolutionSample:
        return SolutionSample(self.lam, self.grid, self.C, self.Cprime, "column")

    @property
    def s(self) -> SolutionSample:
        return SolutionSample(self.lam, self.grid, self.S, self.Sprime, "column")


@dataclass(frozen=True)
class AdjointSolutions:
    """C*, S* строчного уравнения -Z'' + ZQ = lambda ZW"""

    lam: complex
    grid: np.ndarray
    C: np.ndarray
    Cprime: np.ndarray
    S: np.ndarray
    Sprime: np.ndarray

    @property
    def c(self) -> SolutionSample:
        return SolutionSample(self.lam, self.grid, self.C, self.Cprime, "row")

    @property
    def s(self) -> SolutionSample:
        return SolutionSample(self.lam, self.grid, self.S, self.Sprime, "row")


@dataclass(frozen=True)
class WeylData:
    lam: complex
    grid: np.ndarray
    M: np.ndarray
    Phi: np.ndarray
    Phiprime: np.ndarray
    kind: Literal["column", "row"] = "column"

    @property
    def phi(self) -> SolutionSample:
        return SolutionSample(self.lam, self.grid, self.Phi, self.Phiprime, self.kind)

    def to_rows(self) -> list[dict[str, float]]:
        return matrix_rows(self.grid, phi=self.Phi, phiprime=self.Phiprime)


def matrix_rows(grid: np.ndarray, **tables: np.ndarray) -> list[dict[str, float]]:
    """Строки CSV: x и пары _re/_im всех элементов матриц"""
    rows = []
    for index, x in enumerate(grid):
        row = {"x": float(x)}
        for name, table in tables.items():
            for j in range(2):
                for k in range(2):
                    value = complex(table[index, j, k])
                    row[f"{name}{j + 1}{k + 1}_re"] = value.real
                    row[f"{name}{j + 1}{k + 1}_im"] = value.imag
        rows.append(row)
    return rows
