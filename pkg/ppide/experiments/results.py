"""Deterministic CSV output for experiment results."""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ppide import __version__
from ppide.constants import APP_NAME, CSV_FLOAT_FORMAT
from ppide.utils.logger import get_logger

_log = get_logger(__name__)


@dataclass
class ResultTable:
    """Column names, data rows and result metadata of one experiment."""

    columns: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        self.rows.append(values)

    def add_rows(self, *arrays: Iterable[Any], **leading: Any) -> None:
        """Append one row per element of the zipped *arrays*, each prefixed by the *leading* values."""
        for values in zip(*arrays):
            self.add_row(*leading.values(), *values)

    def column(self, name: str) -> list[Any]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def format_value(value: Any) -> str:
    """Render a cell: 17 significant digits for floats, ``true``/``false`` for bools."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return "nan" if math.isnan(v) else format(v, CSV_FLOAT_FORMAT)
    if isinstance(value, (list, tuple)):
        return "[" + " ".join(format_value(v) for v in value) + "]"
    if isinstance(value, Mapping):
        return "{" + " ".join(f"{k}:{format_value(v)}" for k, v in value.items()) + "}"
    if value is None:
        return ""
    return str(value)


def write_csv(table: ResultTable, path: Path, header: Iterable[tuple[str, Any]] = ()) -> Path:
    """Write *table* to *path* with ``#`` metadata lines before the column row.

    The header holds the *header* pairs followed by the table's own metadata.
    Nothing time-dependent is written, so equal inputs give identical files.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# {APP_NAME} {__version__}\n")
        for key, value in header:
            fh.write(f"# {key}={format_value(value)}\n")
        for key, value in table.metadata.items():
            fh.write(f"# result.{key}={format_value(value)}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_value(v) for v in row])
    _log.debug("Wrote %d rows to %s", len(table.rows), path)
    return path
