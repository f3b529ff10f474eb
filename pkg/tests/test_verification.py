import numpy as np
import pytest

from src.errors import UsageError
from src.services.verification import Check, random_problem, run_suite


def test_check_threshold():
    assert Check.at_most("a", 1e-9, 1e-8).passed
    assert not Check.at_most("b", 1e-7, 1e-8).passed
    assert not Check.at_most("c", float("nan"), 1e-8).passed


def test_random_problem_is_reproducible():
    first = random_problem(np.random.default_rng(5))
    second = random_problem(np.random.default_rng(5))
    assert np.array_equal(first.p.coeffs, second.p.coeffs)
    assert first.is_real


def test_unknown_suite():
    with pytest.raises(UsageError):
        run_suite("spectra")


def test_bad_ray():
    with pytest.raises(UsageError):
        run_suite("asymptotics", ray=5)


def test_wronskian_suite(linear_problem):
    passed, checks = run_suite("wronskian", linear_problem, seed=1)
    assert passed
    assert len(checks) == 5


def test_cramer_suite(linear_problem):
    passed, checks = run_suite("cramer", linear_problem, seed=2)
    assert passed and checks


def test_adjoint_suite(linear_problem):
    passed, checks = run_suite("adjoint", linear_problem, seed=3)
    assert passed and checks


def test_asymptotics_on_free_problem(zero_problem):
    passed, checks = run_suite("asymptotics", zero_problem, ray=0)
    assert passed
    assert len(checks) == 7


@pytest.mark.slow
def test_asymptotics_on_linear_problem(linear_problem):
    passed, checks = run_suite("asymptotics", linear_problem)
    assert passed, [check for check in checks if not check.passed]


@pytest.mark.slow
def test_firstorder_suite():
    passed, checks = run_suite("firstorder", seed=4)
    assert passed, [check for check in checks if not check.passed]


@pytest.mark.slow
def test_mappings_suite(linear_problem):
    passed, checks = run_suite("mappings", linear_problem, seed=5)
    assert passed, [check for check in checks if not check.passed]
