"""
Logging configuration for qlattice.

Loguru writes to stderr only; stdout carries command documents. Every module
logs through get_logger(component), which tags records with
``qlattice.<component>`` so searches, verifiers and storage can be told apart
in a shared log file.
"""

import sys
from pathlib import Path
from typing import TYPE_CHECKING

from loguru import logger

if TYPE_CHECKING:
    from loguru import Logger
else:
    Logger = object

ROOT_COMPONENT = "qlattice"

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[component]}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[component]} | {function}:{line} - {message}"


def setup_logging(
    level: str = "WARNING", debug: bool = False, log_file: Path | None = None
) -> None:
    """
    Configure loguru for one CLI run.

    Args:
        level: Console level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        debug: Console at DEBUG, plus a ``<stem>_debug.log`` beside log_file
        log_file: Optional file receiving INFO and above, rotated at 10 MB
    """
    logger.remove()
    logger.configure(extra={"component": ROOT_COMPONENT})

    logger.add(sys.stderr, level="DEBUG" if debug else level, format=CONSOLE_FORMAT)
    if log_file is None:
        return

    log_file = Path(log_file)
    log_file.parent.mkdir(parents=True, exist_ok=True)
    logger.add(
        log_file,
        level="INFO",
        format=FILE_FORMAT,
        rotation="10 MB",
        retention="7 days",
        compression="zip",
    )
    if debug:
        logger.add(
            log_file.with_name(f"{log_file.stem}_debug.log"),
            level="DEBUG",
            format=FILE_FORMAT,
            rotation="50 MB",
            retention="3 days",
            compression="zip",
        )


def get_logger(component: str | None = None) -> Logger:
    """Logger tagged ``qlattice.<component>``, or the root tag without one."""
    if component:
        return logger.bind(component=f"{ROOT_COMPONENT}.{component}")
    return logger.bind(component=ROOT_COMPONENT)
