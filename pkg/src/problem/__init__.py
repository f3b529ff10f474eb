from .coefficients import CoefficientFunction
from .geometry import SectorGeometry, sector_geometry
from .models import InvolutionProblem, MatrixSLProblem, Variant
from .reduction import recover_coefficients, reduce_to_matrix, weight_from_alpha

__all__ = [
    "CoefficientFunction",
    "InvolutionProblem",
    "MatrixSLProblem",
    "SectorGeometry",
    "Variant",
    "recover_coefficients",
    "reduce_to_matrix",
    "sector_geometry",
    "weight_from_alpha",
]
