"""Чтение с проверкой и атомарная запись JSON и CSV"""
import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, ValidationError

from src.errors import ParseError, UsageError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_model(path: str | Path, model: type[ModelT]) -> ModelT:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise UsageError(f"Не удалось прочитать {path}: {error.strerror}", path=str(path)) from error
    try:
        return model.model_validate_json(text)
    except ValidationError as error:
        raise ParseError(
            f"Файл {path} не соответствует схеме {model.__name__}",
            path=str(path),
            problems=[f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in error.errors()],
        ) from error


def dumps(data: BaseModel | dict) -> str:
    """Детерминированный JSON: ключи отсортированы, NaN запрещены"""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def atomic_write(path: str | Path, text: str) -> None:
    """Временный файл в той же папке и os.replace"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", delete=False, newline=""
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise
    logger.debug(f"Записан {path}")


def write_json(path: str | Path, data: BaseModel | dict) -> None:
    atomic_write(path, dumps(data))


def write_csv(path: str | Path, rows: list[dict[str, float]], fieldnames: list[str] | None = None) -> None:
    if fieldnames is None:
        fieldnames = list(rows[0]) if rows else []
    buffer = io.StringIO(newline="")
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    atomic_write(path, buffer.getvalue())
