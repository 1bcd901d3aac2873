"""
Logging setup for the a2stab CLI.

Every module logs through ``logging.getLogger(__name__)``; the handler lives on
the package logger ``a2stab`` only, so library users who import a2stab without
calling :func:`configure_logging` see nothing.
"""

import logging
import sys

PACKAGE_LOGGER = "a2stab"
LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%dT%H:%M:%S"


def _resolve_level(name: str) -> int:
    level = logging.getLevelName(name.strip().upper())
    return level if isinstance(level, int) else logging.INFO


def configure_logging(level: str = "INFO") -> logging.Logger:
    """
    Attach a stderr handler to the ``a2stab`` logger and set its level.

    Unknown level names fall back to INFO. Calling it again keeps the single
    handler and moves both logger and handler to the new level.

    Returns:
        The package logger.
    """
    resolved = _resolve_level(level)
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(resolved)
    logger.propagate = False

    handler = next((h for h in logger.handlers if getattr(h, "_a2stab", False)), None)
    if handler is None:
        # stdout carries command output (JSON, DOT, SVG).
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT))
        handler._a2stab = True  # type: ignore[attr-defined]
        logger.addHandler(handler)
    handler.setLevel(resolved)
    return logger
