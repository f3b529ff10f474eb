"""Блоки P_jk метода спектральных отображений для пары задач"""
from dataclasses import dataclass

import numpy as np

from src.engine.integrator import integrate_adjoint, integrate_fundamental
from src.engine.weyl import adjoint_weyl_solution, weyl_solution
from src.errors import UsageError
from src.problem.models import InvolutionProblem, MatrixSLProblem
from src.problem.reduction import reduce_to_matrix


@dataclass(frozen=True)
class SpectralMappingBlocks:
    x: float
    lam: complex
    P11: np.ndarray
    P12: np.ndarray
    P21: np.ndarray
    P22: np.ndarray


def _as_matrix(problem: InvolutionProblem | MatrixSLProblem) -> MatrixSLProblem:
    if isinstance(problem, InvolutionProblem):
        return reduce_to_matrix(problem)
    return problem


def spectral_mapping_blocks(
    prob_a: InvolutionProblem | MatrixSLProblem,
    prob_b: InvolutionProblem | MatrixSLProblem,
    x: float,
    lam: complex,
) -> SpectralMappingBlocks:
    """P11 = -S Phi~*' + Phi S~*', P12 = S Phi~* - Phi S~*, и производные строки P21, P22"""
    if not 0.0 <= x <= 1.0:
        raise UsageError(f"x = {x} вне [0, 1]")
    first, second = _as_matrix(prob_a), _as_matrix(prob_b)
    grid = np.unique(np.array([0.0, x, 1.0]))
    index = int(np.argmin(np.abs(grid - x)))

    fundamental = integrate_fundamental(first, lam, grid)
    weyl = weyl_solution(first, lam, grid)
    adjoint = integrate_adjoint(second, lam, grid)
    adjoint_weyl = adjoint_weyl_solution(second, lam, grid)

    S, S_prime = fundamental.S[index], fundamental.Sprime[index]
    Phi, Phi_prime = weyl.Phi[index], weyl.Phiprime[index]
    S_adj, S_adj_prime = adjoint.S[index], adjoint.Sprime[index]
    Phi_adj, Phi_adj_prime = adjoint_weyl.Phi[index], adjoint_weyl.Phiprime[index]

    return SpectralMappingBlocks(
        x=float(x),
        lam=complex(lam),
        P11=-S @ Phi_adj_prime + Phi @ S_adj_prime,
        P12=S @ Phi_adj - Phi @ S_adj,
        P21=-S_prime @ Phi_adj_prime + Phi_prime @ S_adj_prime,
        P22=S_prime @ Phi_adj - Phi_prime @ S_adj,
    )
