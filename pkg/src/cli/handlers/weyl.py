"""Команда weyl: M(lambda), M*(lambda) и решение Вейля на сетке"""
import argparse
import logging
from pathlib import Path

import numpy as np

from src.cli.options import add_problem, complex_argument, emit_csv, emit_json, load_problem
from src.engine.integrator import default_grid
from src.engine.weyl import adjoint_weyl_solution, weyl_solution
from src.files.models import complex_list
from src.problem.reduction import reduce_to_matrix

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("weyl", help="Матрица Вейля и решение Вейля")
    add_problem(parser)
    parser.add_argument("--lambda", dest="lam", nargs=2, type=float, required=True, metavar=("RE", "IM"))
    parser.add_argument("--grid", type=int, default=None, help="Число узлов сетки по x")
    parser.add_argument("--output", type=Path, help="JSON с M и M*")
    parser.add_argument("--samples", type=Path, help="CSV со значениями Phi и Phi'")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    matrix = reduce_to_matrix(load_problem(args.problem))
    lam = complex_argument(args.lam)
    grid = default_grid(args.grid)
    direct = weyl_solution(matrix, lam, grid)
    adjoint = adjoint_weyl_solution(matrix, lam, np.array([0.0, 1.0]))
    defect = float(np.linalg.norm(direct.M - direct.Phiprime[0]) / np.linalg.norm(direct.M))
    logger.info(f"lambda = {lam}: |M - Phi'(0)| / |M| = {defect:.2e}")
    emit_json(
        args.output,
        {
            "lambda": complex_list([lam])[0].model_dump(),
            "M": [item.model_dump() for item in complex_list(direct.M)],
            "M_adjoint": [item.model_dump() for item in complex_list(adjoint.M)],
            "consistency": defect,
        },
    )
    if args.samples is not None:
        emit_csv(args.samples, direct.to_rows())
    return 0
