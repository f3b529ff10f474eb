"""Команда forward: собственные значения задач L, L_jk"""
import argparse
import logging

import numpy as np

from src.cli.options import add_output, add_problem, add_region, emit_json, load_problem, suffixed, variant_choices
from src.errors import ConsistencyError, UsageError
from src.files import SpectrumFile
from src.problem.models import Variant
from src.spectral.characteristic import characteristic_set
from src.spectral.contour import Rectangle, find_zeros
from src.spectral.eigen import Spectrum, find_eigenvalues, find_lowest_eigenvalues, pair_eigenvalues
from src.spectral.oracle import oracle_determinant, oracle_eigenvalues

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-6


def register(subparsers) -> None:
    parser = subparsers.add_parser("forward", help="Собственные значения по задаче")
    add_problem(parser)
    parser.add_argument("--variant", action="append", choices=variant_choices())
    target = parser.add_mutually_exclusive_group(required=True)
    add_region(target)
    target.add_argument("--count", type=int, help="Число значений наименьшего модуля")
    parser.add_argument("--oracle", action="store_true", help="Сверка с явным решением при p = q = 0")
    add_output(parser)
    parser.set_defaults(handler=handle)


def oracle_values(alpha: complex, variant: Variant, region: Rectangle | None, count: int | None) -> np.ndarray:
    if region is None:
        return oracle_eigenvalues(alpha, variant, count)
    zeros, _, _ = find_zeros(lambda lambdas: oracle_determinant(alpha, lambdas, variant, scaled=True), region)
    return np.array([zero.value for zero in zeros for _ in range(zero.multiplicity)], dtype=complex)


def compare_with_oracle(alpha: complex, spectrum: Spectrum, region, count) -> float:
    """Максимальное относительное расхождение с явным спектром"""
    expected = oracle_values(alpha, spectrum.variant, region, count)
    computed = spectrum.values()
    if computed.size != expected.size:
        raise ConsistencyError(
            f"{spectrum.variant}: найдено {computed.size} значений, явное решение даёт {expected.size}",
            computed=computed.size,
            expected=expected.size,
        )
    if computed.size == 0:
        return 0.0
    paired = pair_eigenvalues(computed, expected)
    deviation = float(np.max(np.abs(paired - expected) / np.maximum(1.0, np.abs(expected))))
    logger.info(f"{spectrum.variant}: расхождение с явным решением {deviation:.2e}")
    if deviation > ORACLE_TOL:
        raise ConsistencyError(
            f"{spectrum.variant}: расхождение с явным решением {deviation:.2e}", deviation=deviation
        )
    return deviation


def handle(args: argparse.Namespace) -> int:
    problem = load_problem(args.problem)
    variants = [Variant(v) for v in dict.fromkeys(args.variant or [Variant.L.value])]
    if len(variants) > 1 and args.output is None:
        raise UsageError("Для нескольких --variant нужен --output")
    if args.count is not None and args.count < 1:
        raise UsageError("--count должен быть положительным")
    if args.oracle and not problem.is_free:
        raise UsageError("--oracle применим только при p = q = 0")
    region = Rectangle.from_sequence(args.region) if args.region else None
    ctx = characteristic_set(problem)
    for variant in variants:
        if region is not None:
            spectrum = find_eigenvalues(ctx, region, variant)
        else:
            spectrum = find_lowest_eigenvalues(ctx, variant, args.count)
        if args.oracle:
            compare_with_oracle(problem.alpha, spectrum, spectrum.region if region else None, args.count)
        emit_json(suffixed(args.output, variant.value, len(variants) > 1), SpectrumFile.from_spectrum(spectrum))
    return 0
