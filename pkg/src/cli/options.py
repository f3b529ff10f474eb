"""Общие аргументы команд и вывод результатов"""
import argparse
import sys
from pathlib import Path

import numpy as np
from pydantic import BaseModel

from src.errors import UsageError
from src.files import ProblemFile, dumps, read_model, write_csv, write_json
from src.problem.models import InvolutionProblem, Variant


class ToolkitArgumentParser(argparse.ArgumentParser):
    """Ошибки разбора аргументов идут через UsageError (код 1), а не SystemExit(2)"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def add_problem(parser: argparse.ArgumentParser, *, required: bool = True) -> None:
    parser.add_argument("--problem", type=Path, required=required, help="JSON-файл задачи")


def add_region(parser, *, required: bool = False) -> None:
    parser.add_argument(
        "--region",
        nargs=4,
        type=float,
        required=required,
        metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"),
    )


def add_line(parser) -> None:
    parser.add_argument("--start", nargs=2, type=float, default=(-50.0, 0.0), metavar=("RE", "IM"))
    parser.add_argument("--stop", nargs=2, type=float, default=(50.0, 0.0), metavar=("RE", "IM"))
    parser.add_argument("--points", type=int, default=201)


def add_output(parser, *, help: str = "JSON-файл результата (по умолчанию stdout)") -> None:
    parser.add_argument("--output", type=Path, default=None, help=help)


def variant_choices() -> list[str]:
    return [variant.value for variant in Variant]


def load_problem(path: Path | None) -> InvolutionProblem | None:
    if path is None:
        return None
    return read_model(path, ProblemFile).to_problem()


def complex_argument(values) -> complex:
    re, im = values
    return complex(re, im)


def line_scan(args: argparse.Namespace) -> np.ndarray:
    """Равномерные точки отрезка [start, stop] на комплексной плоскости"""
    if args.points < 2:
        raise UsageError("Для сканирования нужно хотя бы две точки")
    return np.linspace(complex_argument(args.start), complex_argument(args.stop), args.points)


def emit_json(path: Path | None, model: BaseModel | dict) -> None:
    if path is None:
        sys.stdout.write(dumps(model))
    else:
        write_json(path, model)


def emit_csv(path: Path | None, rows: list[dict[str, float]]) -> None:
    if path is None:
        raise UsageError("Для табличного вывода нужен --output")
    write_csv(path, rows)


def suffixed(path: Path | None, suffix: str, many: bool) -> Path | None:
    """spectrum.json -> spectrum_L11.json, если файлов несколько"""
    if path is None or not many:
        return path
    return path.with_name(f"{path.stem}_{suffix}{path.suffix}")
