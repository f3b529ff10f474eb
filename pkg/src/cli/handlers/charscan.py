"""Команда charscan: значения Delta и Delta_jk вдоль отрезка"""
import argparse
import logging

import numpy as np

from src.cli.options import add_line, add_output, add_problem, emit_csv, line_scan, load_problem
from src.problem.models import Variant
from src.spectral.characteristic import characteristic_set

logger = logging.getLogger(__name__)

COLUMNS = {
    Variant.L: "delta",
    Variant.L11: "delta11",
    Variant.L12: "delta12",
    Variant.L21: "delta21",
    Variant.L22: "delta22",
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("charscan", help="Характеристические функции вдоль отрезка")
    add_problem(parser)
    add_line(parser)
    parser.add_argument(
        "--scaled", action="store_true", help="Значения, умноженные на exp(-2 sigma), и столбец sigma"
    )
    add_output(parser, help="CSV-файл результата")
    parser.set_defaults(handler=handle)


def scan_rows(values: np.ndarray, lambdas: np.ndarray, sigma: np.ndarray | None = None) -> list[dict[str, float]]:
    rows = []
    for index, lam in enumerate(lambdas):
        row = {"lambda_re": float(lam.real), "lambda_im": float(lam.imag)}
        for variant, name in COLUMNS.items():
            value = complex(values[index, variant.index])
            row[f"{name}_re"] = value.real
            row[f"{name}_im"] = value.imag
        if sigma is not None:
            row["sigma"] = float(sigma[index])
        rows.append(row)
    return rows


def handle(args: argparse.Namespace) -> int:
    ctx = characteristic_set(load_problem(args.problem))
    lambdas = line_scan(args)
    if args.scaled:
        values, sigma = ctx.scaled_components(lambdas)
        rows = scan_rows(values, lambdas, sigma)
    else:
        rows = scan_rows(ctx.components(lambdas), lambdas)
    logger.info(f"Сканирование: {lambdas.size} точек")
    emit_csv(args.output, rows)
    return 0
