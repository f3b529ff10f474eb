"""Сервисы"""
from .verification import SUITES, Check, random_problem, run_suite

__all__ = ["SUITES", "Check", "random_problem", "run_suite"]
