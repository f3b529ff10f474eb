"""Схемы входных и выходных файлов (pydantic)"""
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.problem.coefficients import CoefficientFunction
from src.problem.models import InvolutionProblem, Variant
from src.spectral.contour import Rectangle, Zero
from src.spectral.eigen import Spectrum

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
Pair = tuple[FiniteFloat, FiniteFloat]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ComplexModel(StrictModel):
    re: FiniteFloat
    im: FiniteFloat = 0.0

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z) -> "ComplexModel":
        z = complex(z)
        return cls(re=z.real, im=z.imag)


class PolyCoefficient(StrictModel):
    type: Literal["poly"]
    coeffs: list[Pair] = Field(min_length=1)

    def to_function(self) -> CoefficientFunction:
        return CoefficientFunction.polynomial([complex(re, im) for re, im in self.coeffs])


class GridCoefficient(StrictModel):
    type: Literal["grid"]
    x: list[FiniteFloat] = Field(min_length=2)
    values: list[Pair] = Field(min_length=2)

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.x) != len(self.values):
            raise ValueError("x и values должны иметь одинаковую длину")
        return self

    def to_function(self) -> CoefficientFunction:
        return CoefficientFunction.grid(self.x, [complex(re, im) for re, im in self.values])


Coefficient = Annotated[PolyCoefficient | GridCoefficient, Field(discriminator="type")]


def coefficient_model(function: CoefficientFunction) -> PolyCoefficient | GridCoefficient:
    pairs = [(float(c.real), float(c.imag)) for c in function.coeffs]
    if function.kind == "poly":
        return PolyCoefficient(type="poly", coeffs=pairs)
    return GridCoefficient(type="grid", x=[float(t) for t in function.nodes], values=pairs)


class ProblemFile(StrictModel):
    alpha: ComplexModel
    p: Coefficient
    q: Coefficient
    bc: Variant = Variant.L

    def to_problem(self) -> InvolutionProblem:
        return InvolutionProblem(
            alpha=self.alpha.value, p=self.p.to_function(), q=self.q.to_function(), bc=self.bc
        )

    @classmethod
    def from_problem(cls, problem: InvolutionProblem) -> "ProblemFile":
        return cls(
            alpha=ComplexModel.of(problem.alpha),
            p=coefficient_model(problem.p),
            q=coefficient_model(problem.q),
            bc=problem.bc,
        )


class EigenvalueModel(StrictModel):
    re: FiniteFloat
    im: FiniteFloat = 0.0
    mult: int = Field(default=1, ge=1)


class SpectrumFile(StrictModel):
    variant: Variant
    region: list[FiniteFloat] = Field(min_length=4, max_length=4)
    shift: FiniteFloat = 0.0
    eigenvalues: list[EigenvalueModel]

    def to_spectrum(self) -> Spectrum:
        zeros = tuple(Zero(complex(e.re, e.im), e.mult) for e in self.eigenvalues)
        return Spectrum(
            eigenvalues=zeros,
            region=Rectangle.from_sequence(self.region),
            variant=self.variant,
            shift=self.shift,
        )

    @classmethod
    def from_spectrum(cls, spectrum: Spectrum) -> "SpectrumFile":
        return cls(
            variant=spectrum.variant,
            region=spectrum.region.as_list(),
            shift=spectrum.shift,
            eigenvalues=[
                EigenvalueModel(re=z.value.real, im=z.value.imag, mult=z.multiplicity)
                for z in spectrum.eigenvalues
            ],
        )


class FitConfigFile(StrictModel):
    basis: str = Field(pattern=r"^(poly|grid):\d+$")
    N: int = Field(default=20, ge=1)
    starts: int = Field(default=8, ge=1)
    seed: int = 42
    mode: Literal["eigen", "charfun"] = "eigen"
    alpha: ComplexModel
    variants: list[Variant] | None = None
    tol: FiniteFloat | None = None
    ridge: FiniteFloat | None = None
    real_coefficients: bool = True
    max_nfev: int = Field(default=100, ge=1)


class StartModel(StrictModel):
    index: int
    objective: float
    evaluations: int
    message: str
    params: list[ComplexModel]


class FitReportFile(StrictModel):
    basis: str
    params: list[ComplexModel]
    residual: float | None
    history: list[float]
    mismatches: dict[str, list[ComplexModel]]
    converged: bool
    mode: str
    starts: list[StartModel]


class ConstantModel(StrictModel):
    variant: Variant
    value: ComplexModel
    error: float
    ray: float | None
    truncation: int


class ConstantsFile(StrictModel):
    alpha: ComplexModel
    constants: list[ConstantModel]


class CheckModel(StrictModel):
    name: str
    metric: float | None
    threshold: float
    passed: bool


class VerifyReport(StrictModel):
    suite: str
    passed: bool
    checks: list[CheckModel]


def complex_list(values) -> list[ComplexModel]:
    return [ComplexModel.of(v) for v in np.asarray(values, dtype=complex).ravel()]
