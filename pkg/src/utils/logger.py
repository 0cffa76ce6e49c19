"""
Logging configuration for the project.
"""

import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

from ..config.settings import settings

FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def setup_logger(level: Optional[str] = None, log_dir: Optional[Union[str, Path]] = None) -> Path:
    """
    Configure loguru sinks: console, daily debug file and daily error file.

    Args:
        level: Console level; defaults to ``settings.LOG_LEVEL``
        log_dir: Directory for log files; defaults to ``settings.LOG_DIR``

    Returns:
        The log directory in use
    """
    logger.remove()

    log_dir = Path(log_dir or settings.LOG_DIR)
    log_dir.mkdir(parents=True, exist_ok=True)

    logger.add(
        sys.stdout,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=(level or settings.LOG_LEVEL).upper(),
    )

    logger.add(
        log_dir / "absolute_trust_{time:YYYY-MM-DD}.log",
        rotation="1 day",
        retention="30 days",
        format=FILE_FORMAT,
        level="DEBUG",
        enqueue=True,
    )

    logger.add(
        log_dir / "errors_{time:YYYY-MM-DD}.log",
        rotation="1 day",
        retention="30 days",
        format=FILE_FORMAT,
        level="ERROR",
        enqueue=True,
    )

    logger.debug(f"Logger initialized, writing to {log_dir}")
    return log_dir
