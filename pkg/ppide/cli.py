"""CLI entry points for ppide.

Pure orchestration: no numerics live here.
All logic belongs in ppide.core / ppide.experiments / ppide.checks / ppide.ui.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from ppide import __version__
from ppide.checks.dependencies import run_all_checks
from ppide.constants import DEFAULT_THREADS, TABLE1_FILENAME, THREADS_ENV_VAR
from ppide.experiments.config import load_config
from ppide.experiments.runner import emit_table1, run_experiment
from ppide.ui.display import (
    get_spinner,
    print_banner,
    print_doctor_table,
    print_error,
    print_result_table,
    print_run_summary,
    print_version,
)
from ppide.utils.exceptions import (
    AnchorSolveError,
    BandedError,
    ConfigError,
    NumericalError,
    PpideError,
)
from ppide.utils.logger import get_logger
from ppide.utils.paths import ensure_app_dirs, prepare_output_dir

_log = get_logger(__name__)


# ---------------------------------------------------------------------------
# Version callback
# ---------------------------------------------------------------------------

def _version_callback(ctx: click.Context, _param: click.Parameter, value: bool) -> None:
    if not value or ctx.resilient_parsing:
        return
    print_version(__version__)
    ctx.exit()


# ---------------------------------------------------------------------------
# Top-level exception handler
# ---------------------------------------------------------------------------

def _handle_errors(exc: BaseException) -> None:
    """Map every failure to a user-facing message and an exit code.

    Exit 1 for bad input (config, parameters, output directory), exit 2 when
    a numerical march or factorization fails.
    """
    if isinstance(exc, NumericalError):
        print_error(f"Numerical failure in {exc.module} at step {exc.step}", hint=exc.reason)
        sys.exit(2)
    if isinstance(exc, AnchorSolveError):
        print_error(f"Anchor solve failed at alpha={exc.alpha}", hint=exc.reason)
        sys.exit(2)
    if isinstance(exc, BandedError):
        print_error("Linear solve failed", hint=str(exc))
        sys.exit(2)
    if isinstance(exc, ConfigError):
        print_error("Invalid configuration", hint=str(exc))
        sys.exit(1)
    if isinstance(exc, PpideError):
        print_error("Invalid parameters", hint=str(exc))
        sys.exit(1)
    if isinstance(exc, OSError):
        print_error("Cannot write results", hint=f"Check the output directory: {exc}")
        sys.exit(1)
    _log.exception("Unexpected error")
    print_error("Unexpected error. Check logs for details.", hint=str(exc) or None)
    sys.exit(1)


# ---------------------------------------------------------------------------
# CLI commands
# ---------------------------------------------------------------------------

@click.group()
@click.option(
    "--version", "-V",
    is_flag=True, is_eager=True, expose_value=False,
    callback=_version_callback,
    help="Show version and exit.",
)
def main() -> None:
    """ppide: finite-difference pricing under tempered-stable jump models.

    \b
    Examples:
      ppide run --config configs/fd_vs_fft.toml
      ppide run --set experiment.name=alpha_interp --set sweep.alpha_real=-2.5
      ppide table1 --out results/table1.csv
      ppide doctor
    """
    ensure_app_dirs()


@main.command()
@click.option("--config", "-c", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="TOML experiment file.")
@click.option("--set", "-s", "overrides", multiple=True, metavar="SECTION.KEY=VALUE",
              help="Override one config value; repeatable.")
@click.option("--out", "-o", "out_dir", type=click.Path(file_okay=False, path_type=Path),
              help="Directory for the result CSV (overrides experiment.output).")
@click.option("--threads", "-j", type=click.IntRange(min=1), default=DEFAULT_THREADS, show_default=True,
              envvar=THREADS_ENV_VAR, help="Worker threads for independent solves.")
def run(config_path: Path | None, overrides: tuple[str, ...], out_dir: Path | None, threads: int) -> None:
    """Run one experiment and write its CSV.

    \b
    Experiments: fd_vs_fft, alpha_interp, vg_case, infvar_nu_star_sweep,
    infvar_m_sweep, stability_sweep, test_integral, basic_model.
    """
    print_banner()
    try:
        cfg = load_config(config_path, overrides, out_dir)
        with get_spinner(f"Running {cfg.experiment}..."):
            result = run_experiment(cfg, threads=threads)
    except KeyboardInterrupt:
        print_error("Run cancelled.")
        sys.exit(130)
    except Exception as exc:  # noqa: BLE001
        _handle_errors(exc)
        return
    print_run_summary(result.experiment, result.path, result.config_hash, result.table.metadata)


@main.command()
@click.option("--config", "-c", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="TOML file whose [grid] section is tabulated.")
@click.option("--out", "-o", "out_path", type=click.Path(dir_okay=False, path_type=Path),
              default=Path(TABLE1_FILENAME), show_default=True, help="CSV file to write.")
def table1(config_path: Path | None, out_path: Path) -> None:
    """Tabulate FD and FFT grid steps and check them against the published values."""
    try:
        cfg = load_config(config_path)
        path = prepare_output_dir(out_path.parent) / out_path.name
        table = emit_table1(cfg.grid, path)
    except Exception as exc:  # noqa: BLE001
        _handle_errors(exc)
        return
    print_result_table(table, "Grid steps")
    click.echo(f"Saved: {path}")


@main.command()
def doctor() -> None:
    """Check the Python version and the installed numerical stack."""
    print_doctor_table(run_all_checks())
