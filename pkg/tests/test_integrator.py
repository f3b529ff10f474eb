import numpy as np
import pytest

from src.engine.integrator import (
    default_grid,
    integrate_adjoint,
    integrate_fundamental,
    wronskian,
    wronskian_profile,
)
from src.errors import UsageError
from src.problem.reduction import reduce_to_matrix


def test_free_solutions_match_closed_form(zero_problem):
    matrix = reduce_to_matrix(zero_problem)
    lam = 7.0 + 3.0j
    solution = integrate_fundamental(matrix, lam, default_grid(33))
    x = solution.grid
    for k, w in enumerate(matrix.w):
        root = np.sqrt(lam * w)
        assert np.allclose(solution.C[:, k, k], np.cos(root * x), rtol=1e-9, atol=1e-10)
        assert np.allclose(solution.S[:, k, k], np.sin(root * x) / root, rtol=1e-9, atol=1e-10)
        assert np.allclose(solution.Sprime[:, k, k], np.cos(root * x), rtol=1e-9, atol=1e-10)
    assert np.allclose(solution.C[:, 0, 1], 0.0)


def test_rescaled_integration_agrees_with_plain(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    lam = 4000.0 + 100.0j
    grid = np.array([0.0, 0.5, 1.0])
    plain = integrate_fundamental(matrix, lam, grid)
    scaled = integrate_fundamental(matrix, lam, grid, rescale=True)
    assert scaled.log_scale > 0
    restored = scaled.S[-1] * np.exp(scaled.log_scale)
    assert np.linalg.norm(restored - plain.S[-1]) / np.linalg.norm(plain.S[-1]) < 1e-6


def test_wronskian_identities(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    lam = 5.0 - 2.0j
    grid = default_grid(17)
    direct = integrate_fundamental(matrix, lam, grid)
    adjoint = integrate_adjoint(matrix, lam, grid)
    assert np.allclose(wronskian_profile(adjoint.c, direct.s), np.eye(2), atol=1e-9)
    assert np.allclose(wronskian_profile(adjoint.s, direct.c), -np.eye(2), atol=1e-9)
    assert np.allclose(wronskian(adjoint.c, direct.c, 0.5), 0.0, atol=1e-9)


def test_wronskian_requires_same_lambda(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    direct = integrate_fundamental(matrix, 1.0, default_grid(9))
    adjoint = integrate_adjoint(matrix, 2.0, default_grid(9))
    with pytest.raises(UsageError):
        wronskian(adjoint.c, direct.s, 0.0)


def test_wronskian_requires_row_solution(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    direct = integrate_fundamental(matrix, 1.0, default_grid(9))
    with pytest.raises(UsageError):
        wronskian(direct.c, direct.s, 0.0)


def test_point_outside_grid(linear_problem):
    matrix = reduce_to_matrix(linear_problem)
    direct = integrate_fundamental(matrix, 1.0, default_grid(9))
    with pytest.raises(UsageError):
        direct.s.at(0.3)
