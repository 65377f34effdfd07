"""Uniform log-price / time grids and the padded FFT domain."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ppide.constants import MIN_N_SPACE
from ppide.utils.exceptions import GridError


@dataclass(frozen=True)
class Grid:
    """Uniform grid with nodes ``x_i = x_min + i·h`` for ``i = 0..n_space``.

    ``window`` is the ``(start, stop)`` slice of nodes that belonged to the
    grid before :func:`extend_fft_domain` padded it; ``None`` for unpadded grids.
    """

    x_min: float
    x_max: float
    n_space: int
    h: float
    n_time: int
    theta: float
    maturity: float
    window: tuple[int, int] | None = None

    @property
    def n_nodes(self) -> int:
        return self.n_space + 1

    @property
    def nodes(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(self.n_nodes, dtype=float)

    def x(self, i: int) -> float:
        if not 0 <= i <= self.n_space:
            raise GridError(f"node index {i} outside 0..{self.n_space}")
        return self.x_min + i * self.h

    def restrict(self, values: np.ndarray) -> np.ndarray:
        """Return the part of *values* inside the original (unpadded) window."""
        values = np.asarray(values)
        if values.shape[0] != self.n_nodes:
            raise GridError(f"expected {self.n_nodes} values, got {values.shape[0]}")
        if self.window is None:
            return values
        start, stop = self.window
        return values[start:stop]

    @property
    def window_nodes(self) -> np.ndarray:
        return self.restrict(self.nodes)


def build_grid(x_min: float, x_max: float, n_space: int, maturity: float, n_time: int) -> Grid:
    """Build a uniform space/time grid.

    Args:
        x_min: Left end of the log-price interval.
        x_max: Right end of the log-price interval.
        n_space: Number of space intervals N (``h = (x_max - x_min) / N``).
        maturity: Time horizon T in years.
        n_time: Number of time steps N_t (``θ = T / N_t``).

    Returns:
        The constructed :class:`Grid`.

    Raises:
        GridError: On an empty interval, too few nodes, or a bad time grid.
    """
    if not (math.isfinite(x_min) and math.isfinite(x_max)) or not x_min < x_max:
        raise GridError(f"need finite x_min < x_max, got ({x_min}, {x_max})")
    if n_space < MIN_N_SPACE:
        raise GridError(f"n_space={n_space} must be at least {MIN_N_SPACE}")
    if n_time < 1:
        raise GridError(f"n_time={n_time} must be at least 1")
    if not maturity > 0:
        raise GridError(f"maturity={maturity} must be positive")
    return Grid(
        x_min=float(x_min),
        x_max=float(x_max),
        n_space=int(n_space),
        h=(x_max - x_min) / n_space,
        n_time=int(n_time),
        theta=maturity / n_time,
        maturity=float(maturity),
    )


def build_fft_grid(x_star: float, n_space: int, maturity: float, n_time: int) -> Grid:
    """Symmetric FFT window ``(-x*, x*)`` with N intervals."""
    return build_grid(-x_star, x_star, n_space, maturity, n_time)


def extend_fft_domain(g: Grid) -> Grid:
    """Pad *g* with N/2 intervals on each side, keeping ``h``.

    The new grid runs from ``x_min - h(N/2 - 1)`` to ``x_max + h(N/2 + 1)``,
    so it has ``2N`` intervals; the original nodes stay addressable through
    ``window``.

    Raises:
        GridError: If N is odd or the grid is already padded.
    """
    if g.n_space % 2:
        raise GridError(f"n_space={g.n_space} must be even to pad symmetrically")
    if g.window is not None:
        raise GridError("grid is already padded")
    half = g.n_space // 2
    start = half - 1
    return Grid(
        x_min=g.x_min - g.h * start,
        x_max=g.x_max + g.h * (half + 1),
        n_space=2 * g.n_space,
        h=g.h,
        n_time=g.n_time,
        theta=g.theta,
        maturity=g.maturity,
        window=(start, start + g.n_nodes),
    )
