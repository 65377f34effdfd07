"""Integration tests for ppide.cli -- uses click.testing.CliRunner.

Design: Rich Console is module-level and does NOT write to CliRunner's captured
stdout, so every print_* / get_spinner function imported into ppide.cli is
patched and assertions go on mock call-args. Exit codes are the primary signal.
"""

from __future__ import annotations

from contextlib import ExitStack, contextmanager
from pathlib import Path
from unittest.mock import MagicMock, patch

import pytest
from click.testing import CliRunner

from ppide import __version__
from ppide.cli import main
from ppide.experiments.results import ResultTable
from ppide.experiments.runner import ExperimentResult
from ppide.utils.exceptions import AnchorSolveError, NumericalError, ParameterError, SingularMatrixError


# ---------------------------------------------------------------------------
# Fixtures & shared helpers
# ---------------------------------------------------------------------------

@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _spinner_cm() -> MagicMock:
    """Mock Status context manager (for get_spinner)."""
    cm = MagicMock()
    cm.__enter__ = MagicMock(return_value=cm)
    cm.__exit__ = MagicMock(return_value=False)
    return cm


def _ui_patches() -> dict[str, MagicMock]:
    """Return patches for all UI functions that use rich (safe no-ops)."""
    return {
        "ppide.cli.print_banner":       MagicMock(),
        "ppide.cli.print_version":      MagicMock(),
        "ppide.cli.print_doctor_table": MagicMock(),
        "ppide.cli.print_result_table": MagicMock(),
        "ppide.cli.print_run_summary":  MagicMock(),
        "ppide.cli.print_error":        MagicMock(),
        "ppide.cli.get_spinner":        MagicMock(return_value=_spinner_cm()),
        "ppide.cli.ensure_app_dirs":    MagicMock(),
    }


@contextmanager
def _apply_patches(patches: dict[str, MagicMock]):
    with ExitStack() as stack:
        for target, value in patches.items():
            stack.enter_context(patch(target, new=value))
        yield patches


def _fake_result(tmp_path: Path) -> ExperimentResult:
    table = ResultTable(("x", "diff"), metadata={"max_abs_diff": 0.0})
    return ExperimentResult("fd_vs_fft", tmp_path / "fd_vs_fft.csv", table, "0" * 64)


# ---------------------------------------------------------------------------
# --version / help
# ---------------------------------------------------------------------------

class TestVersion:
    def test_version_flag_exits_zero(self, runner: CliRunner) -> None:
        with _apply_patches(_ui_patches()) as p:
            result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        p["ppide.cli.print_version"].assert_called_once_with(__version__)

    def test_help_lists_commands(self, runner: CliRunner) -> None:
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for cmd in ("run", "table1", "doctor"):
            assert cmd in result.output


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

class TestRun:
    def test_success_prints_summary(self, runner: CliRunner, tmp_path: Path) -> None:
        patches = _ui_patches()
        patches["ppide.cli.run_experiment"] = MagicMock(return_value=_fake_result(tmp_path))
        with _apply_patches(patches) as p:
            result = runner.invoke(main, ["run", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        p["ppide.cli.print_run_summary"].assert_called_once()
        cfg = p["ppide.cli.run_experiment"].call_args.args[0]
        assert cfg.output_path == tmp_path

    def test_set_overrides_reach_config(self, runner: CliRunner, tmp_path: Path) -> None:
        patches = _ui_patches()
        patches["ppide.cli.run_experiment"] = MagicMock(return_value=_fake_result(tmp_path))
        with _apply_patches(patches) as p:
            result = runner.invoke(
                main, ["run", "--set", "experiment.name=vg_case", "--set", "grid.n_space=64", "--out", str(tmp_path)]
            )
        assert result.exit_code == 0, result.output
        cfg = p["ppide.cli.run_experiment"].call_args.args[0]
        assert cfg.experiment == "vg_case"
        assert cfg.grid.n_space == 64

    def test_threads_from_env(self, runner: CliRunner, tmp_path: Path) -> None:
        patches = _ui_patches()
        patches["ppide.cli.run_experiment"] = MagicMock(return_value=_fake_result(tmp_path))
        with _apply_patches(patches) as p:
            result = runner.invoke(main, ["run", "--out", str(tmp_path)], env={"PPIDE_THREADS": "3"})
        assert result.exit_code == 0, result.output
        assert p["ppide.cli.run_experiment"].call_args.kwargs["threads"] == 3

    def test_zero_threads_rejected(self, runner: CliRunner) -> None:
        with _apply_patches(_ui_patches()):
            result = runner.invoke(main, ["run", "--threads", "0"])
        assert result.exit_code == 2

    def test_unknown_key_exits_one(self, runner: CliRunner, tmp_path: Path) -> None:
        with _apply_patches(_ui_patches()) as p:
            result = runner.invoke(main, ["run", "--set", "grid.bogus=1", "--out", str(tmp_path)])
        assert result.exit_code == 1
        assert p["ppide.cli.print_error"].call_args.args[0] == "Invalid configuration"

    def test_config_file_is_read(self, runner: CliRunner, tmp_path: Path) -> None:
        cfg_file = tmp_path / "exp.toml"
        cfg_file.write_text('[experiment]\nname = "basic_model"\n[grid]\nn_time = 0\n')
        patches = _ui_patches()
        patches["ppide.cli.run_experiment"] = MagicMock(return_value=_fake_result(tmp_path))
        with _apply_patches(patches) as p:
            result = runner.invoke(main, ["run", "--config", str(cfg_file), "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        cfg = p["ppide.cli.run_experiment"].call_args.args[0]
        assert cfg.experiment == "basic_model"
        assert cfg.grid.n_time == 0

    @pytest.mark.parametrize(
        ("exc", "code"),
        [
            (ParameterError("nu_plus", -1, "must be positive"), 1),
            (PermissionError("denied"), 1),
            (NumericalError("fft_ref", 7, "non-finite values"), 2),
            (AnchorSolveError(-2, "boom"), 2),
            (SingularMatrixError(3), 2),
        ],
    )
    def test_error_exit_codes(self, runner: CliRunner, tmp_path: Path, exc: Exception, code: int) -> None:
        patches = _ui_patches()
        patches["ppide.cli.run_experiment"] = MagicMock(side_effect=exc)
        with _apply_patches(patches):
            result = runner.invoke(main, ["run", "--out", str(tmp_path)])
        assert result.exit_code == code

    def test_numerical_error_names_module_and_step(self, runner: CliRunner, tmp_path: Path) -> None:
        patches = _ui_patches()
        patches["ppide.cli.run_experiment"] = MagicMock(side_effect=NumericalError("pp_stepper", 12, "inf"))
        with _apply_patches(patches) as p:
            runner.invoke(main, ["run", "--out", str(tmp_path)])
        message = p["ppide.cli.print_error"].call_args.args[0]
        assert "pp_stepper" in message and "12" in message


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------

class TestTable1:
    def test_writes_csv(self, runner: CliRunner, tmp_path: Path) -> None:
        target = tmp_path / "grid" / "steps.csv"
        with _apply_patches(_ui_patches()) as p:
            result = runner.invoke(main, ["table1", "--out", str(target)])
        assert result.exit_code == 0, result.output
        assert target.is_file()
        assert "FD_256" in target.read_text()
        table = p["ppide.cli.print_result_table"].call_args.args[0]
        assert all(table.column("matches"))

    def test_default_file_in_working_dir(self, runner: CliRunner, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.chdir(tmp_path)
        with _apply_patches(_ui_patches()):
            result = runner.invoke(main, ["table1"])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "table1.csv").is_file()

    def test_directory_rejected(self, runner: CliRunner, tmp_path: Path) -> None:
        with _apply_patches(_ui_patches()):
            result = runner.invoke(main, ["table1", "--out", str(tmp_path)])
        assert result.exit_code == 2


# ---------------------------------------------------------------------------
# doctor
# ---------------------------------------------------------------------------

class TestDoctor:
    def test_doctor_renders_checks(self, runner: CliRunner) -> None:
        patches = _ui_patches()
        patches["ppide.cli.run_all_checks"] = MagicMock(return_value={"python_ok": True})
        with _apply_patches(patches) as p:
            result = runner.invoke(main, ["doctor"])
        assert result.exit_code == 0
        p["ppide.cli.print_doctor_table"].assert_called_once_with({"python_ok": True})
