import logging
from typing import Union

from rich.console import Console
from rich.logging import RichHandler

FORMAT = "%(message)s"
DATE_FORMAT = "[%X]"

# logs go to stderr; stdout carries command output only
error_console = Console(stderr=True)

logging.basicConfig(
    level=logging.INFO,
    format=FORMAT,
    datefmt=DATE_FORMAT,
    handlers=[RichHandler(console=error_console, rich_tracebacks=True)],
)
# EdgeLeakage and the other numerical warnings go through the same handler
logging.captureWarnings(True)


class Logger:
    def __init__(self, name, level: Union[int, str] = logging.NOTSET):
        self.log = logging.getLogger(name)
        self.log.setLevel(level)

    def set_level(self, level: Union[int, str]) -> None:
        if isinstance(level, str):
            level = level.upper()
        self.log.setLevel(level)
        logging.getLogger().setLevel(level)

    def debug(self, *msg: object, sep=" ") -> None:
        self._emit(logging.DEBUG, msg, sep)

    def info(self, *msg: object, sep=" ") -> None:
        self._emit(logging.INFO, msg, sep)

    def warning(self, *msg: object, sep=" ") -> None:
        self._emit(logging.WARNING, msg, sep)

    def error(self, *msg: object, sep=" ") -> None:
        self._emit(logging.ERROR, msg, sep)

    def critical(self, *msg: object, sep=" ") -> None:
        self._emit(logging.CRITICAL, msg, sep)

    # stack: caller - level method - _emit - self.log.log
    def _emit(self, level: int, msg: tuple, sep: str) -> None:
        if self.log.isEnabledFor(level):
            self.log.log(level, sep.join(map(str, msg)), stacklevel=3)


logger = Logger("olct")
console = Console()


def set_log_level(level: Union[int, str]) -> None:
    logger.set_level(level)
