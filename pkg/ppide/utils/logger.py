"""Logging for ppide: one rotating run log plus rich warnings on the terminal.

Only the ``ppide`` logger owns handlers. Module loggers obtained through
:func:`get_logger` propagate to it, so a sweep running on several worker
threads still writes one interleaved log whose records name the thread.
"""

from __future__ import annotations

import logging
import logging.handlers
import os

from ppide.constants import (
    APP_NAME,
    LOG_BACKUP_COUNT,
    LOG_DATEFMT,
    LOG_DIR,
    LOG_FILENAME,
    LOG_LEVEL_ENV_VAR,
    LOG_RECORD_FORMAT,
    MAX_LOG_BYTES,
)

_app_logger_ready = False


def get_logger(name: str = APP_NAME) -> logging.Logger:
    """Return the logger for *name*, wiring the ``ppide`` handlers on first use.

    Args:
        name: ``"ppide"`` or a dotted module name below it.

    Returns:
        The :class:`logging.Logger`; module loggers carry no handlers.
    """
    global _app_logger_ready
    if not _app_logger_ready:
        _wire_app_logger(logging.getLogger(APP_NAME))
        _app_logger_ready = True
    return logging.getLogger(name)


def file_log_level() -> int:
    """Level for the run log; ``PPIDE_LOG_LEVEL`` overrides the DEBUG default."""
    raw = os.environ.get(LOG_LEVEL_ENV_VAR, "").strip().upper()
    level = logging.getLevelName(raw) if raw else logging.DEBUG
    return level if isinstance(level, int) else logging.DEBUG


def _wire_app_logger(app: logging.Logger) -> None:
    app.setLevel(logging.DEBUG)
    try:
        app.addHandler(_run_log_handler())
    except OSError as exc:
        app.addHandler(_plain_stderr_handler(logging.DEBUG))
        app.warning("run log unavailable (%s); writing to stderr", exc)
    app.addHandler(_console_handler())


def _run_log_handler() -> logging.Handler:
    LOG_DIR.mkdir(parents=True, exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        LOG_DIR / LOG_FILENAME,
        maxBytes=MAX_LOG_BYTES,
        backupCount=LOG_BACKUP_COUNT,
        encoding="utf-8",
    )
    handler.setLevel(file_log_level())
    handler.setFormatter(logging.Formatter(fmt=LOG_RECORD_FORMAT, datefmt=LOG_DATEFMT))
    return handler


def _console_handler() -> logging.Handler:
    try:
        from rich.logging import RichHandler
    except ImportError:
        return _plain_stderr_handler(logging.WARNING)
    # Solver warnings (stiffness, compensation fallbacks) only.
    return RichHandler(level=logging.WARNING, show_path=False, rich_tracebacks=True, markup=False)


def _plain_stderr_handler(level: int) -> logging.Handler:
    handler = logging.StreamHandler()
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter("ppide %(levelname)s: %(message)s"))
    return handler
