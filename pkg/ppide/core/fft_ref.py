"""FFT reference solver: first-order quadrature of the jump integral.

On a uniform grid the quadrature ``h Σ_j w_j f_j C_{i+j}`` is a Toeplitz
matrix-vector product. Embedding the Toeplitz matrix in a circulant one of
length at least ``2n - 1`` turns it into a pointwise product of FFTs, which
the explicit Euler march then applies once per time step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
import scipy.fft
from scipy.linalg import toeplitz
from scipy.special import gamma

from ppide.constants import COMPENSATION_MODES, TRAPEZOID_ORIGIN_WEIGHT
from ppide.core.grid import Grid, extend_fft_domain
from ppide.core.model import JumpSide, PriceVector, SideParams, compensator
from ppide.core.operators import green_kernel_samples
from ppide.utils.exceptions import DimensionError, DomainError, GridError, NumericalError, ParameterError
from ppide.utils.logger import get_logger

_log = get_logger(__name__)

CompensationMode = Literal["analytic", "discrete"]


@dataclass(frozen=True, eq=False)
class ToeplitzKernel:
    """Quadrature-weighted kernel samples for offsets ``-(n-1) .. n-1``.

    ``samples[n - 1 + j]`` multiplies ``C_{i+j}``. The FFT of the circulant
    embedding is computed once at construction.
    """

    samples: np.ndarray = field(repr=False)
    n: int
    fft_size: int = field(init=False)
    spectrum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=float)
        if samples.shape != (2 * self.n - 1,):
            raise DimensionError(2 * self.n - 1, samples.shape[0])
        if np.any(samples < 0):
            raise ParameterError("samples", float(samples.min()), "kernel samples must be nonnegative")
        samples.setflags(write=False)
        size = scipy.fft.next_fast_len(2 * self.n - 1, real=True)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "fft_size", size)
        object.__setattr__(self, "spectrum", scipy.fft.rfft(np.roll(self.first_row[::-1], 1)))

    @property
    def origin_value(self) -> float:
        return float(self.samples[self.n - 1])

    @property
    def mass(self) -> float:
        """``Σ_j w_j f_j``; times ``h`` this is the discrete kernel integral."""
        return float(self.samples.sum())

    @property
    def first_row(self) -> np.ndarray:
        """Circulant first row ``(f_0, …, f_{n-1}, 0, …, 0, f_{1-n}, …, f_{-1})``."""
        n = self.n
        row = np.zeros(self.fft_size)
        row[:n] = self.samples[n - 1:]
        row[self.fft_size - (n - 1):] = self.samples[: n - 1]
        return row

    def dense(self) -> np.ndarray:
        """Dense ``n × n`` Toeplitz matrix with entry ``(i, k) = samples[n - 1 + k - i]``."""
        n = self.n
        return toeplitz(self.samples[n - 1::-1], self.samples[n - 1:])


# ──────────────────────────────────────────────────────────────────────────────
# Kernels
# ──────────────────────────────────────────────────────────────────────────────

def tempered_kernel_weights(side: JumpSide, lam: float, nu: float, alpha: float, n: int, h: float) -> ToeplitzKernel:
    """Trapezoid-weighted samples of ``λ e^{-ν|y|} |y|^{-(1+α)}`` on one half line.

    The origin carries half weight and the value λ for α = -1, zero for
    α < -1, and is excluded for α > -1.
    """
    if not (lam >= 0 and nu > 0 and h > 0):
        raise ParameterError("kernel", (lam, nu, h), "need lambda >= 0, nu > 0 and h > 0")
    f = green_kernel_samples(h * np.arange(n), lam, nu, -(1.0 + alpha))
    f[0] *= TRAPEZOID_ORIGIN_WEIGHT
    samples = np.zeros(2 * n - 1)
    if side is JumpSide.POSITIVE:
        samples[n - 1:] = f
    else:
        samples[: n] = f[::-1]
    return ToeplitzKernel(samples, n)


def laplace_kernel(alpha: float, lam: float, n: int, h: float) -> ToeplitzKernel:
    """Two-sided samples of ``λ (α/2) e^{-α|y|}`` for the Laplace-jump model."""
    if not alpha > 0:
        raise ParameterError("alpha", alpha, "Laplace kernel needs alpha > 0")
    y = h * np.arange(-(n - 1), n)
    return ToeplitzKernel(lam * 0.5 * alpha * np.exp(-alpha * np.abs(y)), n)


def compensation_value(mode: CompensationMode, sp: SideParams, kernel: ToeplitzKernel, h: float) -> float:
    """``√V λν^αΓ(-α)`` for ``analytic``; the quadrature's own mass ``h Σ w_j f_j`` for ``discrete``."""
    if mode not in COMPENSATION_MODES:
        raise ParameterError("compensation", mode, f"must be one of {COMPENSATION_MODES}")
    if mode == "analytic":
        return sp.sqrt_v * compensator(sp.lam, sp.nu, sp.alpha)
    return h * kernel.mass


# ──────────────────────────────────────────────────────────────────────────────
# Jump integral and march
# ──────────────────────────────────────────────────────────────────────────────

def fft_jump_integral(kernel: ToeplitzKernel, c: PriceVector, h: float) -> PriceVector:
    """Return ``h Σ_j f_j C_{i+j}`` for every node via the circulant FFT.

    Raises:
        GridError: If ``c`` does not match the kernel size.
    """
    c = np.asarray(c, dtype=float)
    if c.shape[0] != kernel.n:
        raise GridError(f"price vector has {c.shape[0]} nodes, kernel expects {kernel.n}")
    prod = scipy.fft.irfft(kernel.spectrum * scipy.fft.rfft(c, kernel.fft_size), kernel.fft_size)
    return h * prod[: kernel.n]


def direct_jump_integral(kernel: ToeplitzKernel, c: PriceVector, h: float) -> PriceVector:
    """``O(n²)`` Toeplitz summation of the same quadrature."""
    return h * (kernel.dense() @ np.asarray(c, dtype=float))


def euler_march(
    kernel: ToeplitzKernel,
    c0: PriceVector,
    theta: float,
    n_time: int,
    compensated: bool,
    comp_value: float,
    *,
    h: float,
    sign: int = 1,
) -> PriceVector:
    """Explicit Euler ``C⁺ = C + sign·θ·(J[C] - comp·C)``.

    The compensating term is dropped when ``compensated`` is false.

    Raises:
        NumericalError: On the first step producing non-finite values.
    """
    c = np.asarray(c0, dtype=float).copy()
    comp = comp_value if compensated else 0.0
    for k in range(n_time):
        c = c + sign * theta * (fft_jump_integral(kernel, c, h) - comp * c)
        if not np.all(np.isfinite(c)):
            raise NumericalError("fft_ref", k, "non-finite values in explicit Euler march")
    _log.debug("fft euler march: %d steps, n=%d, fft_size=%d, comp=%g", n_time, kernel.n, kernel.fft_size, comp)
    return c


# ──────────────────────────────────────────────────────────────────────────────
# Test integral
# ──────────────────────────────────────────────────────────────────────────────

def test_integral_exact(x: float | npt.ArrayLike, nu: float, alpha: float) -> float | np.ndarray:
    """``∫_0^∞ (x + y) e^{-νy} y^{-(1+α)} dy = (xν - α) ν^{α-1} Γ(-α)``.

    Raises:
        DomainError: If ``alpha >= 0`` or ``nu <= 0``.
    """
    if alpha >= 0 or not nu > 0:
        raise DomainError("test_integral_exact", f"need alpha < 0 and nu > 0, got alpha={alpha}, nu={nu}")
    out = (np.asarray(x, dtype=float) * nu - alpha) * nu ** (alpha - 1.0) * gamma(-alpha)
    return float(out) if np.ndim(out) == 0 else out


test_integral_exact.__test__ = False  # type: ignore[attr-defined]


@dataclass(frozen=True)
class TestIntegralResult:
    x: np.ndarray
    approx: np.ndarray
    exact: np.ndarray

    __test__ = False

    @property
    def error(self) -> np.ndarray:
        return self.approx - self.exact

    @property
    def max_error(self) -> float:
        return float(np.max(np.abs(self.error)))


def test_integral_fft(g: Grid, nu: float, alpha: float) -> TestIntegralResult:
    """FFT quadrature of the test integral with ``C(x) = x`` on the padded domain.

    Values are reported on the window of *g*; padding is added when *g* has none.
    """
    padded = g if g.window is not None else extend_fft_domain(g)
    x = padded.nodes
    kernel = tempered_kernel_weights(JumpSide.POSITIVE, 1.0, nu, alpha, padded.n_nodes, padded.h)
    approx = padded.restrict(fft_jump_integral(kernel, x, padded.h))
    window = padded.window_nodes
    return TestIntegralResult(window, approx, np.asarray(test_integral_exact(window, nu, alpha)))


test_integral_fft.__test__ = False  # type: ignore[attr-defined]
