"""
Stderr logging for the qrank CLI and batch jobs; stdout is reserved for
rank tables.
"""

import logging
import sys

LOG_FORMAT = "[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s"


def _resolve_level(level: int | str) -> int:
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(level.upper())
    return resolved if isinstance(resolved, int) else logging.INFO


def setup_logging(level: int | str = logging.INFO):
    """
    Accepts a level number or name ("debug", "WARNING"); unknown names fall
    back to INFO. A root logger that already has handlers keeps them.
    """
    root = logging.getLogger()
    root.setLevel(_resolve_level(level))

    if root.handlers:
        return

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
