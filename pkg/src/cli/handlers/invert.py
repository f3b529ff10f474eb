"""Команда invert: подгонка p, q по пяти спектрам"""
import argparse
import logging
from pathlib import Path

import numpy as np

from src.cli.options import add_output, emit_json
from src.errors import UsageError
from src.files import FitConfigFile, FitReportFile, SpectrumFile, read_model
from src.files.models import StartModel, complex_list
from src.inverse.basis import CoefficientBasis
from src.inverse.fit import FitOptions, FitReport, fit_coefficients
from src.inverse.residual import TargetSpectra
from src.problem.models import Variant

logger = logging.getLogger(__name__)

NOT_CONVERGED = 4


def register(subparsers) -> None:
    parser = subparsers.add_parser("invert", help="Восстановление p, q по спектрам")
    parser.add_argument("--spectra", nargs="+", type=Path, required=True, help="JSON-файлы спектров")
    parser.add_argument("--config", type=Path, required=True, help="JSON-файл настроек подгонки")
    add_output(parser)
    parser.set_defaults(handler=handle)


def fit_options(config: FitConfigFile) -> FitOptions:
    return FitOptions(
        count=config.N,
        starts=config.starts,
        seed=config.seed,
        tol=config.tol,
        mode=config.mode,
        ridge=config.ridge,
        max_nfev=config.max_nfev,
        variants=tuple(config.variants or Variant),
        real_coefficients=config.real_coefficients,
    )


def report_file(report: FitReport) -> FitReportFile:
    return FitReportFile(
        basis=report.basis.label,
        params=complex_list(report.basis.params),
        residual=report.residual if np.isfinite(report.residual) else None,
        history=list(report.history),
        mismatches={variant.value: complex_list(values) for variant, values in report.mismatches.items()},
        converged=report.converged,
        mode=report.mode,
        starts=[
            StartModel(
                index=start.index,
                objective=start.objective,
                evaluations=start.evaluations,
                message=start.message,
                params=complex_list(start.params),
            )
            for start in report.starts
        ],
    )


def handle(args: argparse.Namespace) -> int:
    config = read_model(args.config, FitConfigFile)
    spectra = {}
    for path in args.spectra:
        spectrum = read_model(path, SpectrumFile).to_spectrum()
        if spectrum.variant in spectra:
            raise UsageError(f"Спектр {spectrum.variant} задан дважды")
        spectra[spectrum.variant] = spectrum
    targets = TargetSpectra(alpha=config.alpha.value, spectra=spectra)
    report = fit_coefficients(targets, CoefficientBasis.parse(config.basis), fit_options(config))
    emit_json(args.output, report_file(report))
    if not report.converged:
        logger.warning(f"Подгонка не сошлась: невязка {report.residual:.3e}")
        return NOT_CONVERGED
    return 0
