"""Discrete differential operators: one-sided first derivatives, Green-function
operators ``(ν ∓ ∂x)^{p+1} / (λ p!)`` and the Laplace-jump operator ``D² - α²I``.

One-sided stencils keep only the entries that land on the grid, so the
Green-function matrices built here are exactly triangular with a constant
diagonal. The convection stencils may instead close with edge ghosts, which
keeps them triangular and makes them annihilate constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np
import numpy.typing as npt
from scipy.special import gamma

from ppide.core.banded import BandedMatrix, band_power
from ppide.core.model import JumpSide, SideParams
from ppide.utils.exceptions import ParameterError


@dataclass(frozen=True)
class OperatorSpec:
    """Inputs of a Green-function operator on one jump side."""

    side: JumpSide
    p: int
    nu: float
    lam: float
    n: int
    h: float

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ParameterError("p", self.p, "integer path needs p >= 0 (alpha <= -1)")
        if not (self.nu > 0 and self.lam > 0 and self.h > 0):
            raise ParameterError("operator", (self.nu, self.lam, self.h), "nu, lambda and h must be positive")

    @classmethod
    def from_side(cls, side: JumpSide, params: SideParams, n: int, h: float) -> OperatorSpec:
        """Build the operator description for an integer ``alpha <= -1``."""
        if params.alpha != round(params.alpha) or params.alpha > -1:
            raise ParameterError("alpha", params.alpha, "integer path needs an integer alpha <= -1")
        return cls(side, int(round(params.p)), params.nu, params.lam, n, h)

    @property
    def diagonal_value(self) -> float:
        """Constant diagonal ``(ν + 3/(2h))^{p+1} / (λ p!)``."""
        return (self.nu + 1.5 / self.h) ** (self.p + 1) / (self.lam * gamma(self.p + 1))


def _check_size(n: int) -> None:
    if n < 3:
        raise ParameterError("n", n, "one-sided stencils need at least 3 nodes")


CLOSURE_KINDS: tuple[str, ...] = ("truncate", "edge")

Closure = Literal["truncate", "edge"]


def _check_closure(closure: str) -> None:
    if closure not in CLOSURE_KINDS:
        raise ParameterError("closure", closure, f"must be one of {CLOSURE_KINDS}")


def build_forward_d1(n: int, h: float, closure: Closure = "truncate") -> BandedMatrix:
    """Second-order forward difference ``(-3, 4, -1)/(2h)``; upper triangular.

    ``truncate`` drops the entries past the right end. ``edge`` sets the ghost
    ``C_n`` to ``C_{n-1}``: the last row vanishes and row ``n-2`` becomes
    ``(-3, 3)/(2h)``.
    """
    _check_size(n)
    _check_closure(closure)
    diag = np.full(n, -3.0 / (2 * h))
    first = np.full(n - 1, 4.0 / (2 * h))
    if closure == "edge":
        diag[-1] = 0.0
        first[-1] = 3.0 / (2 * h)
    return BandedMatrix.from_diagonals(n, {0: diag, 1: first, 2: -1.0 / (2 * h)})


def build_backward_d1(n: int, h: float, closure: Closure = "truncate") -> BandedMatrix:
    """Second-order backward difference ``(3, -4, 1)/(2h)``; lower triangular.

    ``edge`` sets the ghost ``C_{-1}`` to ``C_0``: row 0 vanishes and row 1
    becomes ``(-3, 3)/(2h)``.
    """
    _check_size(n)
    _check_closure(closure)
    diag = np.full(n, 3.0 / (2 * h))
    first = np.full(n - 1, -4.0 / (2 * h))
    if closure == "edge":
        diag[0] = 0.0
        first[0] = -3.0 / (2 * h)
    return BandedMatrix.from_diagonals(n, {0: diag, -1: first, -2: 1.0 / (2 * h)})


def green_base(side: JumpSide, nu: float, n: int, h: float) -> BandedMatrix:
    """``νI - M_f`` for upward jumps, ``νI + M_b`` for downward jumps."""
    if side is JumpSide.POSITIVE:
        return build_forward_d1(n, h).scaled(-1.0).shifted(nu)
    return build_backward_d1(n, h).shifted(nu)


def build_A_operator(spec: OperatorSpec) -> BandedMatrix:
    """Green-function operator of the tempered kernel on one side.

    Upward jumps use the forward stencil inside ``(ν - ∂x)``, downward jumps
    the backward stencil inside ``(ν + ∂x)``; both choices give a triangular
    matrix whose spectrum is the single value :attr:`OperatorSpec.diagonal_value`.
    """
    base = green_base(spec.side, spec.nu, spec.n, spec.h)
    return band_power(base, spec.p + 1).scaled(1.0 / (spec.lam * gamma(spec.p + 1)))


def build_basic_operator(alpha: float, n: int, h: float) -> BandedMatrix:
    """Central second difference minus ``α² I`` (Laplace-jump model)."""
    _check_size(n)
    if not alpha > 0:
        raise ParameterError("alpha", alpha, "Laplace-jump operator needs alpha > 0")
    inv_h2 = 1.0 / (h * h)
    return BandedMatrix.from_diagonals(n, {-1: inv_h2, 0: -2.0 * inv_h2 - alpha * alpha, 1: inv_h2})


def green_kernel_samples(x: npt.ArrayLike, lam: float, nu: float, p: float) -> np.ndarray:
    """Sample ``λ e^{-νx} x^p 1_{x>0}``; the origin gets λ for ``p = 0`` and 0 otherwise."""
    x = np.asarray(x, dtype=float)
    pos = np.where(x > 0, x, 1.0)
    out = np.where(x > 0, lam * np.exp(-nu * pos) * pos**p, 0.0)
    if p == 0:
        out = np.where(x == 0, lam, out)
    return out
