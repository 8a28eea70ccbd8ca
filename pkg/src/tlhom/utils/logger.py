"""
Logging utilities for tlhom.

Everything logs under the ``tlhom`` namespace to stderr; stdout is reserved
for command output so ``--json`` stays parseable.
"""
import logging
import sys

ROOT = "tlhom"
FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def setup_logger(name: str = ROOT, level: str | int = "INFO") -> logging.Logger:
    """
    Attach a stderr handler to ``name`` and set its level.

    Args:
        name: Logger name
        level: Level name (DEBUG, INFO, WARNING, ERROR, CRITICAL) or number

    Returns:
        Configured logger instance

    Raises:
        ValueError: If the level name is unknown
    """
    logger = logging.getLogger(name)

    # Repeated CLI invocations in one process reuse the handler
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(FORMAT, datefmt="%H:%M:%S"))
        logger.addHandler(handler)
        logger.propagate = False

    numeric = level if isinstance(level, int) else logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"Unknown log level: {level}")
    logger.setLevel(numeric)
    return logger


def get_logger(name: str = ROOT) -> logging.Logger:
    """The logger for ``name``, placed under the tlhom namespace."""
    if name != ROOT and not name.startswith(ROOT + "."):
        name = f"{ROOT}.{name}"
    return logging.getLogger(name)
