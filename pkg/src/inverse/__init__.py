from .basis import CoefficientBasis
from .fit import FitOptions, FitReport, NonUniquenessWitness, fit_coefficients, nonuniqueness_witness
from .residual import TargetSpectra, eigenvalue_mismatches, spectra_residual

__all__ = [
    "CoefficientBasis",
    "FitOptions",
    "FitReport",
    "NonUniquenessWitness",
    "TargetSpectra",
    "eigenvalue_mismatches",
    "fit_coefficients",
    "nonuniqueness_witness",
    "spectra_residual",
]
