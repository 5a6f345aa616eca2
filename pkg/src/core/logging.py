"""Logging configuration."""

import logging
import sys
from pathlib import Path
from typing import Optional

from src.core.config import settings


def setup_logging(level: Optional[str] = None) -> None:
    """Configure application logging.

    Records go to stderr; stdout is reserved for JSON and CSV payloads.
    """
    log_level = getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO)

    # Configure logging format
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    # Repeated calls (CLI + app lifespan in one process) must not stack handlers
    for handler in list(root_logger.handlers):
        if getattr(handler, "_toriclab", False):
            root_logger.removeHandler(handler)

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(log_format, date_format))
    console_handler._toriclab = True  # type: ignore[attr-defined]
    root_logger.addHandler(console_handler)

    # File handler
    if settings.LOG_FILE:
        log_path = Path(settings.LOG_FILE)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(log_format, date_format))
        file_handler._toriclab = True  # type: ignore[attr-defined]
        root_logger.addHandler(file_handler)

    # Set specific loggers
    logging.getLogger("uvicorn").setLevel(logging.INFO)
