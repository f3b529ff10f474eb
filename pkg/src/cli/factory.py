"""Создание и настройка разбора аргументов"""
from src.cli.handlers import HANDLERS
from src.cli.options import ToolkitArgumentParser


def create_parser() -> ToolkitArgumentParser:
    """Создает парсер со всеми командами"""
    parser = ToolkitArgumentParser(
        prog="involution-spectra",
        description="Спектральные данные операторов с инволюцией и их восстановление",
    )
    parser.add_argument("--log-level", default=None, help="Уровень логирования (по умолчанию из настроек)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Регистрируем команды
    for handler in HANDLERS:
        handler.register(subparsers)

    return parser
