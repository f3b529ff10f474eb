"""Общие задачи и вспомогательные функции тестов"""
import json

import numpy as np
import pytest

from src.problem.coefficients import CoefficientFunction
from src.problem.models import InvolutionProblem, Variant
from src.spectral.contour import Rectangle, Zero
from src.spectral.eigen import Spectrum


@pytest.fixture
def zero_problem() -> InvolutionProblem:
    return InvolutionProblem(alpha=0.0)


@pytest.fixture
def linear_problem() -> InvolutionProblem:
    return InvolutionProblem(
        alpha=0.0,
        p=CoefficientFunction.polynomial([0.3, 0.5]),
        q=CoefficientFunction.polynomial([0.2, -0.4]),
    )


@pytest.fixture
def complex_problem() -> InvolutionProblem:
    return InvolutionProblem(
        alpha=0.3 + 0.2j,
        p=CoefficientFunction.polynomial([0.5, 1.0, -2.0]),
        q=CoefficientFunction.polynomial([0.1, 0.7]),
    )


@pytest.fixture
def write_json(tmp_path):
    """Записывает словарь в tmp_path/name и возвращает путь"""

    def write(name: str, data) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


def problem_payload(alpha=0.0, p=((0.0, 0.0),), q=((0.0, 0.0),), bc="L") -> dict:
    return {
        "alpha": {"re": float(np.real(alpha)), "im": float(np.imag(alpha))},
        "p": {"type": "poly", "coeffs": [list(c) for c in p]},
        "q": {"type": "poly", "coeffs": [list(c) for c in q]},
        "bc": bc,
    }


def spectrum_of(values, variant: Variant = Variant.L) -> Spectrum:
    """Spectrum из готовых простых собственных значений"""
    values = np.asarray(values, dtype=complex)
    pad = 1.0 + 0.01 * float(np.max(np.abs(values)))
    region = Rectangle(
        float(values.real.min()) - pad,
        float(values.real.max()) + pad,
        float(values.imag.min()) - pad,
        float(values.imag.max()) + pad,
    )
    return Spectrum(eigenvalues=tuple(Zero(complex(v), 1) for v in values), region=region, variant=variant)
