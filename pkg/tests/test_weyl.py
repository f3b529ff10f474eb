import numpy as np
import pytest

from src.engine.integrator import default_grid
from src.engine.weyl import adjoint_weyl_solution, weyl_matrix, weyl_solution
from src.errors import NearEigenvalueError
from src.problem.reduction import reduce_to_matrix


def test_free_weyl_matrix(zero_problem):
    matrix = reduce_to_matrix(zero_problem)
    lam = 3.0 + 1.0j
    k1, k2 = np.sqrt(lam * matrix.w)
    expected = np.diag([k1 * np.tan(k1), -k2 / np.tan(k2)])
    assert np.allclose(weyl_matrix(matrix, lam), expected, rtol=1e-9)


def test_weyl_solution_boundary_conditions(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    data = weyl_solution(matrix, -4.0 + 6.0j, default_grid(33))
    assert np.allclose(data.Phi[0], np.eye(2))
    assert np.allclose(data.Phiprime[0], data.M, rtol=1e-8)
    boundary = matrix.T @ data.Phiprime[-1] - matrix.Tperp @ data.Phi[-1]
    assert np.allclose(boundary, 0.0, atol=1e-9)


def test_weyl_matrix_equals_adjoint(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    lam = 3.0 + 1.0j
    adjoint = adjoint_weyl_solution(matrix, lam, np.array([0.0, 1.0]))
    assert adjoint.kind == "row"
    assert np.allclose(adjoint.M, weyl_matrix(matrix, lam), rtol=1e-9)
    assert np.allclose(adjoint.Phiprime[0], adjoint.M, rtol=1e-8)


def test_pole_at_eigenvalue(zero_problem):
    matrix = reduce_to_matrix(zero_problem)
    with pytest.raises(NearEigenvalueError) as info:
        weyl_matrix(matrix, (np.pi / 2) ** 2)
    assert info.value.exit_code == 3
    assert info.value.details()["det_abs"] >= 0
