"""Logger hierarchy and handler setup for logfold."""

import logging
import sys
from pathlib import Path
from typing import Optional, TextIO

LOGGER_NAME = "logfold"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
CONSOLE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s [%(filename)s:%(lineno)d]: %(message)s"

# Libraries that log per call at INFO; kept at WARNING
QUIET_LIBRARIES = ("pm4py", "numexpr", "matplotlib")


def _handler(handler: logging.Handler, level: int, fmt: str) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(fmt, datefmt=DATE_FORMAT))
    return handler


def console_level(level: str, verbose: bool = False) -> int:
    """Numeric console level; ``verbose`` wins, unknown names fall back to INFO."""
    if verbose:
        return logging.DEBUG
    resolved = logging.getLevelName(level.upper())
    return resolved if isinstance(resolved, int) else logging.INFO


def setup_logging(
    level: str = "INFO",
    log_file: Optional[Path] = None,
    verbose: bool = False,
    stream: Optional[TextIO] = None,
) -> logging.Logger:
    """
    Configure the ``logfold`` logger: a console handler on stderr and an
    optional DEBUG file handler.

    Calling it again replaces the handlers of the previous call (closing
    any open log file), so the CLI can reconfigure per command.

    Args:
        level: Console level name (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Also write every record, DEBUG included, to this file
        verbose: Force the console to DEBUG
        stream: Console stream, stderr by default

    Returns:
        The ``logfold`` logger
    """
    shown = console_level(level, verbose)
    logger = logging.getLogger(LOGGER_NAME)
    for old in list(logger.handlers):
        logger.removeHandler(old)
        old.close()

    logger.addHandler(_handler(logging.StreamHandler(stream or sys.stderr), shown, CONSOLE_FORMAT))
    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.addHandler(
            _handler(logging.FileHandler(log_file, encoding="utf-8"), logging.DEBUG, FILE_FORMAT)
        )
    # The logger passes everything its most verbose handler wants
    logger.setLevel(logging.DEBUG if log_file else shown)

    for name in QUIET_LIBRARIES:
        logging.getLogger(name).setLevel(max(logging.WARNING, shown))
    return logger


def get_logger(name: str) -> logging.Logger:
    """Logger for ``name`` (usually ``__name__``), placed under ``logfold``."""
    if name == LOGGER_NAME or name.startswith(f"{LOGGER_NAME}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{LOGGER_NAME}.{name}")
