"""Runtime environment checks: Python version and installed numerical stack."""

from __future__ import annotations

import sys
from typing import Any

from ppide.constants import MIN_PYTHON, REQUIRED_PACKAGES


def check_python_version() -> tuple[int, int]:
    """Return the major and minor version of the running Python interpreter.

    Returns:
        A ``(major, minor)`` tuple, e.g. ``(3, 11)``.
    """
    return sys.version_info.major, sys.version_info.minor


def check_package(name: str) -> str | None:
    """Return the installed version of distribution *name*, or ``None`` if absent.

    Uses a lazy import of :mod:`importlib.metadata`. Logs a warning (but
    never raises) when the package is missing.
    """
    from importlib import metadata  # lazy

    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        from ppide.utils.logger import get_logger

        get_logger().warning("%s is not installed.", name)
        return None


def run_all_checks() -> dict[str, Any]:
    """Execute all dependency checks and return a flat results dict::

        {
            "python_ok": True,
            "python_version": "3.11",
            "packages": {"numpy": "1.26.4", "scipy": None, ...},
        }
    """
    major, minor = check_python_version()
    return {
        "python_ok": (major, minor) >= MIN_PYTHON,
        "python_version": f"{major}.{minor}",
        "packages": {name: check_package(name) for name in REQUIRED_PACKAGES},
    }
