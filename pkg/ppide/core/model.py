"""Tempered-stable jump model parameters, market data, and closed-form model quantities.

The Lévy density on each side is ``λ e^{-ν|y|} / |y|^{1+α}``. Every scheme in
:mod:`ppide.core` works on one side at a time; :class:`JumpSide` selects which
parameter triple (and which variance weight) a solve uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Literal

import numpy as np
import numpy.typing as npt
from scipy.special import gamma
from scipy.stats import norm

from ppide.constants import (
    DEFAULT_ALPHA,
    DEFAULT_LAMBDA,
    DEFAULT_MATURITY,
    DEFAULT_NU,
    DEFAULT_OPTION_KIND,
    DEFAULT_RATE,
    DEFAULT_STRIKE,
    DEFAULT_VOL,
)
from ppide.utils.exceptions import DomainError, ParameterError

if TYPE_CHECKING:
    from ppide.core.grid import Grid

PriceVector = npt.NDArray[np.float64]
OptionKind = Literal["put", "call"]


# ──────────────────────────────────────────────────────────────────────────────
# Parameter records
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class SideParams:
    """Parameters of one jump side: intensity, tempering, exponent, √V weight."""

    lam: float
    nu: float
    alpha: float
    sqrt_v: float

    @property
    def p(self) -> float:
        """Green-function power ``p = -(1 + α)``."""
        return -(1.0 + self.alpha)


@dataclass(frozen=True)
class GtspParams:
    """Six-parameter tempered-stable Lévy measure plus the variance weights.

    ``v_r`` and ``v_l`` are the variances whose square roots scale the jump
    generator of each side.
    """

    lambda_plus: float = DEFAULT_LAMBDA
    lambda_minus: float = DEFAULT_LAMBDA
    nu_plus: float = DEFAULT_NU
    nu_minus: float = DEFAULT_NU
    alpha_plus: float = DEFAULT_ALPHA
    alpha_minus: float = DEFAULT_ALPHA
    v_r: float = 1.0
    v_l: float = 1.0

    def __post_init__(self) -> None:
        for name in ("lambda_plus", "lambda_minus", "nu_plus", "nu_minus"):
            value = getattr(self, name)
            if not value > 0:
                raise ParameterError(name, value, "must be positive")
        for name in ("alpha_plus", "alpha_minus"):
            value = getattr(self, name)
            if not value < 2:
                raise ParameterError(name, value, "must be below 2 for an integrable measure")
        for name in ("v_r", "v_l"):
            value = getattr(self, name)
            if not value >= 0:
                raise ParameterError(name, value, "must be nonnegative")

    @property
    def sqrt_v_r(self) -> float:
        return math.sqrt(self.v_r)

    @property
    def sqrt_v_l(self) -> float:
        return math.sqrt(self.v_l)


class JumpSide(str, Enum):
    """Which half of the Lévy measure a splitting sub-step integrates."""

    POSITIVE = "positive"
    NEGATIVE = "negative"

    def select(self, params: GtspParams) -> SideParams:
        """Return the parameter triple and √V weight for this side."""
        if self is JumpSide.POSITIVE:
            return SideParams(params.lambda_plus, params.nu_plus, params.alpha_plus, params.sqrt_v_r)
        return SideParams(params.lambda_minus, params.nu_minus, params.alpha_minus, params.sqrt_v_l)

    @property
    def sign(self) -> int:
        """+1 for upward jumps, -1 for downward jumps."""
        return 1 if self is JumpSide.POSITIVE else -1


@dataclass(frozen=True)
class MarketConfig:
    """Strike, rate and maturity, plus the Black-Scholes seed used as terminal data.

    ``seed_time`` is the time to maturity at which the Black-Scholes value is
    taken; it defaults to ``maturity``.
    """

    strike: float = DEFAULT_STRIKE
    rate: float = DEFAULT_RATE
    vol: float = DEFAULT_VOL
    maturity: float = DEFAULT_MATURITY
    option_kind: OptionKind = DEFAULT_OPTION_KIND  # type: ignore[assignment]
    seed_time: float | None = None

    def __post_init__(self) -> None:
        if not self.strike > 0:
            raise ParameterError("strike", self.strike, "must be positive")
        if not self.maturity > 0:
            raise ParameterError("maturity", self.maturity, "must be positive")
        if not self.vol > 0:
            raise ParameterError("vol", self.vol, "must be positive")
        if self.option_kind not in ("put", "call"):
            raise ParameterError("option_kind", self.option_kind, "must be 'put' or 'call'")
        if self.seed_time is not None and not self.seed_time > 0:
            raise ParameterError("seed_time", self.seed_time, "must be positive")

    @property
    def t_seed(self) -> float:
        return self.maturity if self.seed_time is None else self.seed_time


# ──────────────────────────────────────────────────────────────────────────────
# Closed-form quantities
# ──────────────────────────────────────────────────────────────────────────────

def tempered_kernel(
    y: float | npt.ArrayLike, lam: float, nu: float, alpha: float
) -> float | np.ndarray:
    """One-sided density ``λ e^{-ν|y|} / |y|^{1+α}`` (no support check)."""
    ay = np.abs(np.asarray(y, dtype=float))
    with np.errstate(divide="ignore"):
        out = lam * np.exp(-nu * ay) * ay ** (-(1.0 + alpha))
    return float(out) if np.ndim(out) == 0 else out


def levy_density(y: float | npt.ArrayLike, p: GtspParams) -> float | np.ndarray:
    """Evaluate the two-sided Lévy density at nonzero jump size(s) *y*.

    Args:
        y: Jump size, scalar or array; must be nonzero.
        p: Model parameters.

    Returns:
        Density value(s) using the upward parameters for ``y > 0`` and the
        downward parameters for ``y < 0``.

    Raises:
        DomainError: If any ``y`` is zero.
    """
    arr = np.asarray(y, dtype=float)
    if np.any(arr == 0.0):
        raise DomainError("levy_density", "jump size y=0 is singular")
    up = tempered_kernel(arr, p.lambda_plus, p.nu_plus, p.alpha_plus)
    down = tempered_kernel(arr, p.lambda_minus, p.nu_minus, p.alpha_minus)
    out = np.where(arr > 0, up, down)
    return float(out) if out.ndim == 0 else out


def compensator(lam: float, nu: float, alpha: float) -> float:
    """Integrated kernel mass ``∫_0^∞ λ e^{-νy} y^{-(1+α)} dy = λ ν^α Γ(-α)``.

    Raises:
        DomainError: If ``alpha >= 0`` (Γ has a pole / the integral diverges).
    """
    if alpha >= 0:
        raise DomainError("compensator", f"alpha={alpha} must be negative")
    if not (lam > 0 and nu > 0):
        raise DomainError("compensator", "lambda and nu must be positive")
    return float(lam * nu**alpha * gamma(-alpha))


def black_scholes(
    spot: float | npt.ArrayLike,
    strike: float,
    rate: float,
    vol: float,
    t: float,
    kind: OptionKind = "put",
) -> float | np.ndarray:
    """Black-Scholes European price for time to maturity *t*."""
    s = np.asarray(spot, dtype=float)
    sig_t = vol * math.sqrt(t)
    disc = strike * math.exp(-rate * t)
    with np.errstate(divide="ignore"):
        d1 = (np.log(s / strike) + (rate + 0.5 * vol * vol) * t) / sig_t
    d2 = d1 - sig_t
    if kind == "put":
        out = disc * norm.cdf(-d2) - s * norm.cdf(-d1)
    else:
        out = s * norm.cdf(d1) - disc * norm.cdf(d2)
    return float(out) if out.ndim == 0 else out


def terminal_condition(g: Grid, m: MarketConfig) -> PriceVector:
    """Black-Scholes seed values at every node of *g* (spot ``e^{x_i}``)."""
    values = black_scholes(np.exp(g.nodes), m.strike, m.rate, m.vol, m.t_seed, m.option_kind)
    return np.asarray(values, dtype=float)
