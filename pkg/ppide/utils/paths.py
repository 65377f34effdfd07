"""Output path resolution for experiment artifacts."""

from __future__ import annotations

import logging
import os
import re
from pathlib import Path

from ppide.constants import APP_DIR, APP_NAME, CSV_SUFFIX, LOG_DIR

_UNSAFE_CHARS_RE = re.compile(r"[^A-Za-z0-9._-]+")


def ensure_app_dirs() -> None:
    """Create ``~/.ppide/`` and ``~/.ppide/logs/`` if they do not exist.

    Swallows :class:`OSError` (e.g. permission denied) so that experiments
    still run when the home directory is read-only.
    """
    _alog = logging.getLogger(APP_NAME)
    for d in (APP_DIR, LOG_DIR):
        try:
            d.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            _alog.warning("Could not create app directory %s: %s", d, exc)


def prepare_output_dir(path: Path) -> Path:
    """Create *path* (and parents) and check that it is writable.

    Args:
        path: Directory that will receive CSV results.

    Returns:
        The resolved directory.

    Raises:
        OSError: If the directory cannot be created or is not writable.
    """
    path = path.expanduser().resolve()
    path.mkdir(parents=True, exist_ok=True)
    if not _is_writable_dir(path):
        raise OSError(f"output directory is not writable: {path}")
    return path


def result_filename(experiment: str, suffix: str = CSV_SUFFIX) -> str:
    """Return a filesystem-safe result filename for *experiment*.

    Args:
        experiment: Experiment name, e.g. ``"fd_vs_fft"``.
        suffix: File extension including the dot.

    Returns:
        ``"<experiment><suffix>"`` with unsafe characters replaced by ``_``.
    """
    stem = _UNSAFE_CHARS_RE.sub("_", experiment).strip("._") or "result"
    return stem + suffix


# ---------------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------------

def _is_writable_dir(path: Path) -> bool:
    """Return True if *path* is an existing directory we can write to."""
    try:
        return path.is_dir() and os.access(path, os.W_OK)
    except OSError:
        return False
