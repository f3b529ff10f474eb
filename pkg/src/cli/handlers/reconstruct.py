"""Команда reconstruct: характеристические функции по их нулям"""
import argparse
import logging
from pathlib import Path

from src.cli.options import add_line, add_output, complex_argument, emit_csv, emit_json, line_scan
from src.engine.solutions import matrix_rows
from src.errors import NearEigenvalueError, UsageError
from src.files import ConstantsFile, SpectrumFile, read_model
from src.files.models import ComplexModel, ConstantModel
from src.hadamard.product import build_product, evaluate_with_bound, reconstructed_weyl
from src.problem.geometry import sector_geometry
from src.problem.models import Variant
from src.problem.reduction import weight_from_alpha

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("reconstruct", help="Произведения Адамара по спектрам")
    parser.add_argument("--spectra", nargs="+", type=Path, required=True, help="JSON-файлы спектров")
    parser.add_argument("--alpha", nargs=2, type=float, required=True, metavar=("RE", "IM"))
    parser.add_argument("--truncation", type=int, default=None, help="Число используемых нулей")
    parser.add_argument("--no-tail", dest="tail", action="store_false", help="Без поправки хвоста")
    parser.add_argument("--ray", type=int, default=0, choices=range(4))
    add_line(parser)
    add_output(parser, help="CSV-файл значений")
    parser.add_argument("--constants", type=Path, help="JSON с константами c, c_jk")
    parser.add_argument("--weyl", type=Path, help="CSV с восстановленной M(lambda) (нужны все пять спектров)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    alpha = complex_argument(args.alpha)
    spectra = [read_model(path, SpectrumFile).to_spectrum() for path in args.spectra]
    variants = [spectrum.variant for spectrum in spectra]
    if len(set(variants)) != len(variants):
        raise UsageError(f"Повторяющиеся задачи среди спектров: {', '.join(variants)}")
    if args.weyl is not None and set(variants) != set(Variant):
        raise UsageError("Для --weyl нужны спектры всех пяти задач")
    lambdas = line_scan(args)
    geometry = sector_geometry(weight_from_alpha(alpha))

    products = {}
    for spectrum in spectra:
        products[spectrum.variant] = build_product(
            spectrum, geometry, truncation=args.truncation, tail=args.tail, ray_index=args.ray
        )
        logger.info(f"{spectrum.variant}: c = {products[spectrum.variant].constant:.10g}")

    rows = []
    for variant, product in products.items():
        for lam in lambdas:
            value, bound = evaluate_with_bound(product, lam)
            rows.append(
                {
                    "variant": variant.value,
                    "lambda_re": lam.real,
                    "lambda_im": lam.imag,
                    "value_re": value.real,
                    "value_im": value.imag,
                    "err_bound": bound,
                }
            )
    emit_csv(args.output, rows)

    if args.constants is not None:
        constants = [
            ConstantModel(
                variant=variant,
                value=ComplexModel.of(product.constant),
                error=product.constant_error,
                ray=product.ray,
                truncation=product.truncation,
            )
            for variant, product in products.items()
        ]
        emit_json(args.constants, ConstantsFile(alpha=ComplexModel.of(alpha), constants=constants))

    if args.weyl is not None:
        rows = []
        for lam in lambdas:
            try:
                weyl = reconstructed_weyl(products, lam)
            except NearEigenvalueError:
                logger.warning(f"lambda = {lam} совпадает с собственным значением, пропущено")
                continue
            row = matrix_rows([0.0], m=weyl[None])[0]
            del row["x"]
            rows.append({"lambda_re": lam.real, "lambda_im": lam.imag, **row})
        emit_csv(args.weyl, rows)
    return 0
