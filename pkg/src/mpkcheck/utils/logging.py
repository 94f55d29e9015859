import logging
import sys
from typing import Optional

from mpkcheck.config.settings import LOG_FORMAT, settings


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """Route all mpkcheck loggers to stderr; stdout is reserved for reports."""
    logging.basicConfig(
        level=(level or settings.logging.level).upper(),
        format=fmt or settings.logging.format or LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
