"""Команда reduce: матричная задача или система первого порядка на сетке"""
import argparse
import logging
from pathlib import Path

import numpy as np

from src.cli.options import add_output, add_problem, emit_csv, emit_json, load_problem
from src.engine.integrator import default_grid
from src.engine.solutions import matrix_rows
from src.files.models import complex_list
from src.firstorder.anchor import find_anchor
from src.firstorder.system import reduce_first_order, riccati_residual
from src.problem.geometry import sector_geometry
from src.problem.reduction import reduce_to_matrix

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("reduce", help="Матричная форма задачи или система первого порядка")
    add_problem(parser)
    parser.add_argument("--form", choices=["matrix", "firstorder"], default="matrix")
    parser.add_argument("--grid", type=int, default=None, help="Число узлов сетки по x")
    add_output(parser, help="CSV-файл таблиц")
    parser.add_argument("--header", type=Path, help="JSON-заголовок (по умолчанию stdout)")
    parser.set_defaults(handler=handle)


def _dumped(values) -> list[dict]:
    return [item.model_dump() for item in complex_list(values)]


def handle(args: argparse.Namespace) -> int:
    matrix = reduce_to_matrix(load_problem(args.problem))
    grid = default_grid(args.grid)
    if args.form == "matrix":
        rows = matrix_rows(grid, q=matrix.Q(grid))
        header = {"form": "matrix", "W": _dumped(matrix.w), "T": _dumped(matrix.T)}
    else:
        geometry = sector_geometry(matrix.weights)
        anchor = find_anchor(matrix, geometry, grid=grid)
        system = reduce_first_order(matrix, anchor)
        rows = system.to_rows()
        header = {
            "form": "firstorder",
            "lambda_star": _dumped([system.lambda_star])[0],
            "hat_w": _dumped(system.hat_w),
            "hat_d": _dumped(system.hat_d),
            "block_eigenvalues": _dumped(np.diag(system.diagonal_Q0)),
            "anchor_ratio": anchor.min_ratio,
            "riccati_residual": riccati_residual(system, matrix),
        }
        logger.info(f"lambda* = {system.lambda_star:.6g}, нормированный det X не меньше {anchor.min_ratio:.3e}")
    emit_csv(args.output, rows)
    emit_json(args.header, header)
    return 0
