"""Tests for ppide.ui.display — rich output rendering.

Strategy: swap the module-level ``console`` for a captured Console before each
test, restore it afterwards with a fixture.
"""

from __future__ import annotations

from io import StringIO
from pathlib import Path

import pytest
from rich.console import Console

import ppide.ui.display as display_mod
from ppide.experiments.results import ResultTable


@pytest.fixture(autouse=True)
def captured_console():
    """Replace the module console with a StringIO-backed one for every test.

    Yields:
        The StringIO buffer so tests can call ``.getvalue()`` on it.
    """
    buf = StringIO()
    test_console = Console(file=buf, highlight=False, width=120, force_terminal=False)
    original = display_mod.console
    display_mod.console = test_console
    yield buf
    display_mod.console = original


# ──────────────────────────────────────────────────────────────────────────────
# print_banner / print_version
# ──────────────────────────────────────────────────────────────────────────────

class TestPrintBanner:
    def test_contains_app_name_and_version(self, captured_console) -> None:
        from ppide import __version__
        from ppide.ui.display import print_banner
        print_banner()
        output = captured_console.getvalue()
        assert "ppide" in output
        assert __version__ in output


class TestPrintVersion:
    def test_contains_version_string(self, captured_console) -> None:
        from ppide.ui.display import print_version
        print_version("1.2.3")
        assert "1.2.3" in captured_console.getvalue()


# ──────────────────────────────────────────────────────────────────────────────
# print_doctor_table
# ──────────────────────────────────────────────────────────────────────────────

class TestPrintDoctorTable:
    def _checks(self, **packages: str | None) -> dict:
        return {"python_ok": True, "python_version": "3.12", "packages": packages}

    def test_lists_each_package(self, captured_console) -> None:
        from ppide.ui.display import print_doctor_table
        print_doctor_table(self._checks(numpy="1.26.4", scipy="1.13.0"))
        output = captured_console.getvalue()
        assert "numpy" in output and "1.26.4" in output
        assert "scipy" in output

    def test_missing_package_shows_install_hint(self, captured_console) -> None:
        from ppide.ui.display import print_doctor_table
        print_doctor_table(self._checks(scipy=None))
        output = captured_console.getvalue()
        assert "Missing" in output
        assert "pip install scipy" in output

    def test_old_python_flagged(self, captured_console) -> None:
        from ppide.ui.display import print_doctor_table
        print_doctor_table({"python_ok": False, "python_version": "3.9", "packages": {}})
        assert "requires" in captured_console.getvalue()


# ──────────────────────────────────────────────────────────────────────────────
# print_result_table / print_run_summary
# ──────────────────────────────────────────────────────────────────────────────

class TestPrintResultTable:
    def test_renders_columns_and_flags(self, captured_console) -> None:
        from ppide.ui.display import print_result_table
        table = ResultTable(("column", "h", "matches"))
        table.add_row("FFT_256", 0.15625, True)
        table.add_row("FD_300", 0.0821, False)
        print_result_table(table, "Grid steps")
        output = captured_console.getvalue()
        assert "Grid steps" in output
        assert "FFT_256" in output
        assert "0.15625" in output
        assert "OK" in output and "No" in output


class TestPrintRunSummary:
    def test_shows_path_hash_and_metadata(self, captured_console) -> None:
        from ppide.ui.display import print_run_summary
        print_run_summary("fd_vs_fft", Path("/tmp/fd_vs_fft.csv"), "abcdef0123456789", {"max_abs_diff_256": 0.5})
        output = captured_console.getvalue()
        assert "fd_vs_fft" in output
        assert "abcdef012345" in output
        assert "max_abs_diff_256" in output


# ──────────────────────────────────────────────────────────────────────────────
# print_error
# ──────────────────────────────────────────────────────────────────────────────

class TestPrintError:
    def test_message_shown(self, captured_console) -> None:
        from ppide.ui.display import print_error
        print_error("Something broke")
        assert "Something broke" in captured_console.getvalue()

    def test_hint_shown(self, captured_console) -> None:
        from ppide.ui.display import print_error
        print_error("Bad config", hint="check grid.n_space")
        output = captured_console.getvalue()
        assert "Hint" in output
        assert "check grid.n_space" in output

    def test_no_hint_section_without_hint(self, captured_console) -> None:
        from ppide.ui.display import print_error
        print_error("Plain")
        assert "Hint" not in captured_console.getvalue()


class TestGetSpinner:
    def test_returns_status(self) -> None:
        from rich.status import Status
        from ppide.ui.display import get_spinner
        assert isinstance(get_spinner("Working..."), Status)
