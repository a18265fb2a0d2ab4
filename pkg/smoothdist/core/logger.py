"""
Logging configuration for the smoothdist package.
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logger(
        level: str = "INFO",
        verbose: bool = False,
        log_file: Optional[str] = None,
        fmt: str = LOG_FORMAT,
        colors: bool = True,
) -> logging.Logger:
    """
    Setup the package logger with rich formatting.

    Args:
        level: Logging level name
        verbose: Force DEBUG level
        log_file: Optional log file path
        fmt: Record format shared by the console and file handlers
        colors: Colored console output

    Returns:
        Configured logger instance
    """
    if verbose:
        log_level = logging.DEBUG
    else:
        log_level = getattr(logging, level.upper(), logging.INFO)

    logger = logging.getLogger("smoothdist")
    logger.setLevel(log_level)
    logger.handlers.clear()

    # Diagnostics go to stderr so JSON/CSV on stdout stay parseable
    console_handler = RichHandler(
        console=Console(stderr=True, no_color=not colors),
        show_time=True,
        show_path=False,
        markup=True,
        rich_tracebacks=True,
    )
    console_handler.setLevel(log_level)
    formatter = logging.Formatter(fmt)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False

    return logger


def get_logger(name: str = "smoothdist") -> logging.Logger:
    """
    Get a logger instance.

    Args:
        name: Logger name

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


class LoggerMixin:
    """Mixin class to add logging capabilities to other classes."""

    @property
    def logger(self) -> logging.Logger:
        """Get logger for this class."""
        return get_logger(f"{self.__class__.__module__}.{self.__class__.__name__}")
