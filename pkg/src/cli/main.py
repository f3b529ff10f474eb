#!/usr/bin/env python3
"""Точка входа командной строки involution-spectra"""
import json
import logging
import sys

from src.cli.factory import create_parser
from src.config import settings
from src.errors import ToolkitError

logger = logging.getLogger(__name__)


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(levelname)-5.5s [%(name)s] %(message)s",
        stream=sys.stderr,
    )


def main(argv: list[str] | None = None) -> int:
    """Разбор аргументов и запуск команды; возвращает код завершения"""
    try:
        args = create_parser().parse_args(argv)
        configure_logging(args.log_level)
        logger.info(f"Команда {args.command}")
        code = args.handler(args)
        logger.info(f"Команда {args.command} завершена с кодом {code}")
        return code
    except ToolkitError as error:
        logger.error(error.message)
        sys.stderr.write(json.dumps(error.details(), sort_keys=True, ensure_ascii=False, default=str) + "\n")
        return error.exit_code
    except Exception:
        logger.error("Непредвиденная ошибка", exc_info=True)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
