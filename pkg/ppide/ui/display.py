"""Rich tables, panels, spinners, and status output for ppide.

All user-visible output goes through the module-level ``console`` object.
Tests can swap it out via ``ppide.ui.display.console = Console(file=buf)``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from rich.console import Console
from rich.panel import Panel
from rich.status import Status
from rich.table import Table
from rich.text import Text

from ppide import __version__
from ppide.constants import APP_NAME, MIN_PYTHON
from ppide.experiments.results import ResultTable, format_value

# Module-level console; replace in tests for captured output.
console: Console = Console(highlight=False)


def _ok(flag: bool, bad: str = "✗  Missing") -> Text:
    return Text("✓  OK", style="green bold") if flag else Text(bad, style="red bold")


# ──────────────────────────────────────────────────────────────────────────────
# Public API
# ──────────────────────────────────────────────────────────────────────────────

def print_banner() -> None:
    """Print the app name and version in a styled panel."""
    text = Text(justify="center")
    text.append(APP_NAME, style="bold cyan")
    text.append(f"  v{__version__}", style="dim")
    console.print(Panel(text, border_style="cyan", padding=(0, 4)), justify="center")


def print_version(version: str) -> None:
    """Print a single-line version string."""
    console.print(f"[bold]{APP_NAME}[/bold] version [cyan]{version}[/cyan]")


def print_doctor_table(checks: dict[str, Any]) -> None:
    """Render a rich Table summarising the ``doctor`` checks.

    Args:
        checks: Dict returned by :func:`~ppide.checks.dependencies.run_all_checks`.
    """
    table = Table(
        title=f"[bold]{APP_NAME}: Environment Check[/bold]",
        show_header=True,
        header_style="bold magenta",
        border_style="bright_black",
        expand=False,
    )
    table.add_column("Component", style="bold", min_width=12)
    table.add_column("Status", min_width=8, justify="center")
    table.add_column("Detail")

    py_ver = checks.get("python_version", "?")
    py_ok: bool = checks.get("python_ok", False)
    required = ".".join(map(str, MIN_PYTHON))
    table.add_row("Python", _ok(py_ok), f"v{py_ver}" + ("" if py_ok else f"  [yellow](requires ≥ {required})[/yellow]"))

    for name, version in checks.get("packages", {}).items():
        table.add_row(name, _ok(version is not None), f"v{version}" if version else f"[yellow]run: pip install {name}[/yellow]")

    table.add_row(APP_NAME, _ok(True), f"v{__version__}")
    console.print(table)


def print_result_table(table: ResultTable, title: str) -> None:
    """Render a small :class:`ResultTable` (grid steps, sweeps) as a rich Table."""
    out = Table(title=f"[bold]{title}[/bold]", header_style="bold cyan", border_style="bright_black", expand=False)
    for col in table.columns:
        out.add_column(col, justify="right")
    for row in table.rows:
        cells = []
        for value in row:
            if isinstance(value, bool):
                cells.append(_ok(value, "✗  No"))
            else:
                cells.append(Text(format_value(value) if not isinstance(value, float) else f"{value:.6g}"))
        out.add_row(*cells)
    console.print(out)


def print_run_summary(experiment: str, path: Path, config_hash: str, metadata: dict[str, Any]) -> None:
    """Print a green panel naming the written CSV and the headline result values."""
    body = Text()
    body.append("Experiment: ", style="bold")
    body.append(experiment + "\n", style="bright_white")
    body.append("Config:     ", style="bold")
    body.append(config_hash[:12] + "\n", style="dim")
    for key, value in metadata.items():
        body.append(f"{key}: ", style="bold")
        body.append(format_value(value) + "\n")
    body.append("Saved:      ", style="bold")
    body.append(str(path), style="bright_cyan")
    console.print(
        Panel(body, title="[bold green]✓  Run Complete[/bold green]", border_style="green", padding=(1, 2))
    )


def print_error(message: str, hint: str | None = None) -> None:
    """Print a red panel with an error message and optional hint.

    Args:
        message: Short human-readable error description.
        hint: Optional suggestion for resolving the error.
    """
    body = Text()
    body.append(message, style="bold red")
    if hint:
        body.append("\n\n")
        body.append("Hint: ", style="bold yellow")
        body.append(hint, style="yellow")
    console.print(Panel(body, title="[bold red]✗  Error[/bold red]", border_style="red", padding=(1, 2)))


def get_spinner(message: str) -> Status:
    """Return a rich :class:`~rich.status.Status` context manager (not yet started)."""
    return console.status(message, spinner="dots")
