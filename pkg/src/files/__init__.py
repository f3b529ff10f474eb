from .models import (
    ComplexModel,
    ConstantsFile,
    FitConfigFile,
    FitReportFile,
    ProblemFile,
    SpectrumFile,
    VerifyReport,
)
from .storage import atomic_write, dumps, read_model, write_csv, write_json

__all__ = [
    "ComplexModel",
    "ConstantsFile",
    "FitConfigFile",
    "FitReportFile",
    "ProblemFile",
    "SpectrumFile",
    "VerifyReport",
    "atomic_write",
    "dumps",
    "read_model",
    "write_csv",
    "write_json",
]
