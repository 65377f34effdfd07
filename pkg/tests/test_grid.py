"""Tests for ppide.core.grid — uniform grids and FFT padding."""

from __future__ import annotations

import math

import numpy as np
import pytest

from ppide.core.grid import build_fft_grid, build_grid, extend_fft_domain
from ppide.utils.exceptions import GridError


class TestBuildGrid:
    def test_steps(self) -> None:
        g = build_grid(0.0, 1.0, 10, 0.5, 5)
        assert g.h == pytest.approx(0.1)
        assert g.theta == pytest.approx(0.1)
        assert g.n_nodes == 11
        assert g.nodes[-1] == pytest.approx(1.0)
        assert g.window is None

    def test_fd_log_domain_step(self) -> None:
        g = build_grid(math.log(1e-8), math.log(500.0), 256, 30 / 365, 50)
        assert g.h == pytest.approx(0.096, rel=5e-3)

    def test_doubling_n_halves_h(self) -> None:
        assert build_grid(0.0, 1.0, 20, 1.0, 1).h == pytest.approx(build_grid(0.0, 1.0, 10, 1.0, 1).h / 2)

    @pytest.mark.parametrize(
        "args",
        [(1.0, 0.0, 10, 1.0, 1), (0.0, math.inf, 10, 1.0, 1), (0.0, 1.0, 2, 1.0, 1), (0.0, 1.0, 10, 1.0, 0), (0.0, 1.0, 10, 0.0, 1)],
    )
    def test_invalid(self, args: tuple) -> None:
        with pytest.raises(GridError):
            build_grid(*args)

    def test_node_accessor(self) -> None:
        g = build_grid(0.0, 1.0, 10, 1.0, 1)
        assert g.x(3) == pytest.approx(0.3)
        with pytest.raises(GridError):
            g.x(11)


class TestFftGrid:
    @pytest.mark.parametrize(
        ("n", "h"), [(256, 0.1563), (512, 0.078), (1024, 0.039), (2048, 0.0195), (4096, 0.00977)]
    )
    def test_published_steps(self, n: int, h: float) -> None:
        assert build_fft_grid(20.0, n, 1.0, 1).h == pytest.approx(h, rel=5e-3)

    def test_padding_keeps_h_and_window(self) -> None:
        g = build_fft_grid(20.0, 64, 1.0, 1)
        padded = extend_fft_domain(g)
        assert padded.h == pytest.approx(g.h)
        assert padded.n_space == 2 * g.n_space
        np.testing.assert_allclose(padded.window_nodes, g.nodes, atol=1e-12)

    def test_restrict_length_checked(self) -> None:
        padded = extend_fft_domain(build_fft_grid(20.0, 64, 1.0, 1))
        with pytest.raises(GridError):
            padded.restrict(np.zeros(10))

    def test_odd_n_rejected(self) -> None:
        with pytest.raises(GridError):
            extend_fft_domain(build_fft_grid(20.0, 63, 1.0, 1))

    def test_double_padding_rejected(self) -> None:
        with pytest.raises(GridError):
            extend_fft_domain(extend_fft_domain(build_fft_grid(20.0, 64, 1.0, 1)))
