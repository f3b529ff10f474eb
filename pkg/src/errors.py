"""Исключения тулкита и контракт кодов завершения CLI"""
from typing import Any


class ToolkitError(Exception):
    """Базовая ошибка тулкита"""

    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self._details = details

    def details(self) -> dict[str, Any]:
        """Машиночитаемое описание ошибки (уходит в stderr в виде JSON)"""
        payload = {"error": type(self).__name__, "message": self.message, "exit_code": self.exit_code}
        payload.update({key: _plain(value) for key, value in self._details.items()})
        return payload


class UsageError(ToolkitError):
    exit_code = 1


class ParseError(ToolkitError):
    exit_code = 1


class AdmissibilityError(ToolkitError):
    """alpha вне (-1, 1) ∪ (C \\ R)"""

    exit_code = 2


class DegenerateWeightError(ToolkitError):
    """arg w1 = arg w2: специальных лучей не существует"""

    exit_code = 2


class IntegrationError(ToolkitError):
    exit_code = 3

    def __init__(self, message: str, reached_x: float, **details: Any):
        super().__init__(message, reached_x=reached_x, **details)
        self.reached_x = reached_x


class NearEigenvalueError(ToolkitError):
    exit_code = 3

    def __init__(self, message: str, det_abs: float, **details: Any):
        super().__init__(message, det_abs=det_abs, **details)
        self.det_abs = det_abs


class RegionError(ToolkitError):
    exit_code = 3

    def __init__(self, message: str, suggested_inflation: float, **details: Any):
        super().__init__(message, suggested_inflation=suggested_inflation, **details)
        self.suggested_inflation = suggested_inflation


class ConsistencyError(ToolkitError):
    exit_code = 3


class AnchorError(ToolkitError):
    exit_code = 3


class ResidualError(ToolkitError):
    exit_code = 3


class ConvergenceError(ToolkitError):
    exit_code = 4


def _plain(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if hasattr(value, "item"):
        return _plain(value.item())
    return value
