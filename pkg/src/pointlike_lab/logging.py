"""Logging setup for pointlike_lab.

This module configures logging with rotation, truncation of oversized payloads
(face lists, multiplication tables), and both file and console handlers. The
console handler writes to standard error so that standard output stays
reserved for JSON reports.
"""

import logging
import os
import sys
from contextlib import contextmanager
from contextvars import ContextVar
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Iterator, Optional

DEBUG_ENV_VAR = "POINTLIKE_LAB_DEBUG"

_debug_override: ContextVar[Optional[bool]] = ContextVar("pointlike_lab_debug", default=None)


class PayloadTruncationFilter(logging.Filter):
    """Filter that shortens log messages carrying large payloads."""

    def __init__(self, max_length: int = 2000):
        super().__init__()
        self.max_length = max_length

    def filter(self, record: logging.LogRecord) -> bool:
        """Truncate the rendered message of a record.

        Args:
            record: The log record to filter

        Returns:
            True (always process the record, just modify it)
        """
        message = record.getMessage()
        if len(message) > self.max_length:
            hidden = len(message) - self.max_length
            message = f"{message[:self.max_length]}... [{hidden} more chars]"

        record.msg = message
        record.args = ()

        return True


def debug_mode_enabled() -> bool:
    """Whether debug mode is on: set by :func:`debug_mode`, else by POINTLIKE_LAB_DEBUG.

    Debug mode lowers the console threshold and turns on internal cross-checks.
    """
    override = _debug_override.get()
    if override is not None:
        return override
    return os.getenv(DEBUG_ENV_VAR, "").lower() in ("1", "true", "yes")


@contextmanager
def debug_mode(enabled: bool = True) -> Iterator[None]:
    """Switch debug mode for the current context only, leaving the environment alone."""
    token = _debug_override.set(enabled)
    try:
        yield
    finally:
        _debug_override.reset(token)


def get_log_dir() -> Path:
    """Get the pointlike_lab logs directory path.

    Returns:
        Path to ~/.pointlike_lab/logs directory
    """
    return Path.home() / ".pointlike_lab" / "logs"


def get_log_path() -> Path:
    """Get the pointlike_lab log file path.

    Returns:
        Path to ~/.pointlike_lab/logs/pointlike_lab.log
    """
    return get_log_dir() / "pointlike_lab.log"


def setup_logging(
    level: int = logging.INFO,
    console_level: Optional[int] = None,
    file_level: Optional[int] = None
) -> logging.Logger:
    """Set up logging for pointlike_lab.

    Configures both file and console logging with:
    - Rotating file handler (10MB max, 5 backups), skipped when the log
      directory cannot be created
    - Truncation of oversized messages
    - Console output on stderr

    Args:
        level: Default logging level (default: INFO)
        console_level: Console handler level (default: WARNING, INFO in debug mode)
        file_level: File handler level (default: DEBUG)

    Returns:
        Configured logger instance
    """
    if console_level is None:
        console_level = logging.INFO if debug_mode_enabled() else logging.WARNING
    if file_level is None:
        file_level = logging.DEBUG

    logger = logging.getLogger("pointlike_lab")
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()

    file_formatter = logging.Formatter(
        fmt='%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(lineno)d - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    console_formatter = logging.Formatter(fmt='%(levelname)s: %(message)s')

    log_path = get_log_path()
    try:
        get_log_dir().mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            filename=log_path,
            maxBytes=10 * 1024 * 1024,
            backupCount=5,
            encoding='utf-8'
        )
    except OSError:
        file_handler = None

    if file_handler is not None:
        file_handler.setLevel(file_level)
        file_handler.setFormatter(file_formatter)
        file_handler.addFilter(PayloadTruncationFilter())
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(console_formatter)
    console_handler.addFilter(PayloadTruncationFilter())
    logger.addHandler(console_handler)

    if file_handler is not None:
        logger.debug(f"Logging initialized - log file: {log_path}")
    else:
        logger.debug("Logging initialized without file handler")

    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a logger instance.

    Args:
        name: Logger name (default: "pointlike_lab")

    Returns:
        Logger instance

    Example:
        logger = get_logger(__name__)
        logger.info("Oracle started")
    """
    if name is None:
        name = "pointlike_lab"
    elif not name.startswith("pointlike_lab"):
        name = f"pointlike_lab.{name}"

    return logging.getLogger(name)
