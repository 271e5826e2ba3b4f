"""Logging configuration for qsna."""

import logging
import os
from typing import Optional

ROOT_LOGGER_NAME = "qsna"


def _configure_root() -> logging.Logger:
    root = logging.getLogger(ROOT_LOGGER_NAME)

    # Get log level from environment variable
    log_level_str = os.environ.get("QSNA_LOG_LEVEL", "CRITICAL").upper()

    if log_level_str == "DEBUG":
        # Only configure if not already configured
        if not root.handlers:
            console_handler = logging.StreamHandler()
            console_handler.setLevel(logging.DEBUG)
            formatter = logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S"
            )
            console_handler.setFormatter(formatter)
            root.addHandler(console_handler)
        root.setLevel(logging.DEBUG)
        root.propagate = False
    else:
        # In normal mode the solver stays silent
        root.setLevel(logging.CRITICAL)
        for handler in root.handlers[:]:
            root.removeHandler(handler)
        root.propagate = False

    return root


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get a configured logger.

    Child loggers (``qsna.geometry.simplex`` etc.) carry no handlers of their
    own and inherit the level of the ``qsna`` logger, so re-reading
    ``QSNA_LOG_LEVEL`` here reconfigures every module at once.

    Args:
        name: Logger name (optional, defaults to the package logger)

    Returns:
        Configured logger
    """
    root = _configure_root()
    if not name or name == ROOT_LOGGER_NAME:
        return root
    return logging.getLogger(name)


logger = get_logger()
