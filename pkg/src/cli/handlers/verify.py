"""Команда verify: наборы численных проверок"""
import argparse
import logging

import numpy as np

from src.cli.options import add_output, add_problem, emit_json, load_problem
from src.files import VerifyReport
from src.files.models import CheckModel
from src.services.verification import SUITES, run_suite

logger = logging.getLogger(__name__)

FAILED = 3


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Численные проверки тождеств и асимптотик")
    parser.add_argument("--suite", required=True, help=f"Один из: {', '.join(SUITES)}")
    add_problem(parser, required=False)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--ray", type=int, default=None)
    add_output(parser)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    problem = load_problem(args.problem)
    passed, checks = run_suite(args.suite, problem, seed=args.seed, ray=args.ray)
    report = VerifyReport(
        suite=args.suite,
        passed=passed,
        checks=[
            CheckModel(
                name=check.name,
                metric=check.metric if np.isfinite(check.metric) else None,
                threshold=check.threshold,
                passed=check.passed,
            )
            for check in checks
        ],
    )
    emit_json(args.output, report)
    logger.info(f"{args.suite}: {'пройдено' if passed else 'не пройдено'} ({len(checks)} проверок)")
    return 0 if passed else FAILED
