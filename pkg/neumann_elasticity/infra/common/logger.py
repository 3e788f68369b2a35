"""Centralized logging configuration."""
import logging
import sys
from typing import Optional


_logging_configured = False

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_DATEFMT = "%Y-%m-%d %H:%M:%S"


def resolve_level(level: int | str) -> int:
    """
    Turn a level name such as "debug" into its numeric value.

    Raises:
        ValueError: If the name is not a standard logging level
    """
    if isinstance(level, int):
        return level
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {level}")
    return numeric


def setup_logging(
    level: int | str = logging.INFO,
    format_string: Optional[str] = None,
    datefmt: Optional[str] = None,
    force: bool = False,
) -> None:
    """
    Configure logging for the application.

    Args:
        level: Logging level, numeric or by name
        format_string: Custom format string. If None, uses default.
        datefmt: Date format string. If None, uses default.
        force: If True, reconfigure even if already configured.
    """
    global _logging_configured

    if _logging_configured and not force:
        return

    logging.basicConfig(
        level=resolve_level(level),
        format=format_string or DEFAULT_FORMAT,
        datefmt=datefmt or DEFAULT_DATEFMT,
        stream=sys.stdout,
        force=force,
    )

    _logging_configured = True


def get_logger(name: str) -> logging.Logger:
    """Get a logger, configuring the root handler on first use."""
    if not _logging_configured:
        setup_logging()

    return logging.getLogger(name)
