"""Exponent α = 1 (infinite activity, infinite variation).

The α = 1 generator equals an integral over the tempering rate of α = 0
generators, each of which is a one-sided fractional power plus a convection
term:

    𝓛 = √V λ ∫_ν^{ν*} [ -log(1 ∓ ∂x/s) + log((s ∓ 1)/s) ∂x ] ds

Composite Simpson on ``ν_i = ν + iΔ`` turns ``exp(θ𝓛)`` into a product of
M + 1 commuting factors. Each factor is stepped by a convection solve followed
by the fractional power ``(1 ∓ ∂x/ν_i)^{-m_i}`` with ``m_i = w_i θ``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ppide.constants import DEFAULT_M_INTERVALS, DEFAULT_NU_STAR, DEFAULT_TIME_ORDER, TIME_ORDERS
from ppide.core.banded import BandedMatrix, band_lu_solve, band_matvec, band_mul
from ppide.core.model import GtspParams, JumpSide, PriceVector
from ppide.core.operators import build_backward_d1, build_forward_d1
from ppide.core.vg_stepper import fractional_base, interpolate_power
from ppide.utils.exceptions import DomainError, ParameterError, SchemeError
from ppide.utils.logger import get_logger

_log = get_logger(__name__)

TimeOrder = Literal["order2", "order3"]

_FRACTIONAL_ORDERS: dict[str, tuple[int, ...]] = {
    "order2": (0, 1, 2),
    "order3": (0, 1, 2, 3),
}


def simpson_weights(m_intervals: int) -> np.ndarray:
    """Composite Simpson weights ``(1, 4, 2, 4, …, 2, 4, 1)`` for M intervals.

    Raises:
        ParameterError: If M is odd or smaller than 2.
    """
    if m_intervals < 2 or m_intervals % 2:
        raise ParameterError("m_intervals", m_intervals, "must be an even integer >= 2")
    a = np.full(m_intervals + 1, 2.0)
    a[1::2] = 4.0
    a[0] = a[-1] = 1.0
    return a


@dataclass(frozen=True)
class InfVarConfig:
    """One side of the α = 1 scheme.

    ``lam`` may be zero, which turns every factor into the identity.
    """

    side: JumpSide
    nu: float
    lam: float
    sqrt_v: float
    h: float
    theta: float
    nu_star: float = DEFAULT_NU_STAR
    m_intervals: int = DEFAULT_M_INTERVALS
    time_order: TimeOrder = DEFAULT_TIME_ORDER  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.time_order not in TIME_ORDERS:
            raise ParameterError("time_order", self.time_order, f"must be one of {TIME_ORDERS}")
        simpson_weights(self.m_intervals)
        if not (self.nu > 0 and self.h > 0):
            raise ParameterError("infvar", (self.nu, self.h), "nu and h must be positive")
        if self.side is JumpSide.POSITIVE and not self.nu > 1:
            raise DomainError("infvar_stepper", f"upward tempering nu={self.nu} must exceed 1")
        if not self.nu_star > self.nu:
            raise ParameterError("nu_star", self.nu_star, f"must exceed nu={self.nu}")
        if not (self.lam >= 0 and self.sqrt_v >= 0 and self.theta >= 0):
            raise ParameterError("infvar", (self.lam, self.sqrt_v, self.theta), "lambda, sqrt_v and theta must be nonnegative")
        limit = max(_FRACTIONAL_ORDERS[self.time_order])
        worst = float(self.exponents.max())
        if worst >= limit:
            raise SchemeError(
                "infvar", f"factor exponent m_i={worst:.4g} >= {limit}; increase m_intervals or reduce theta"
            )

    @classmethod
    def from_model(
        cls,
        params: GtspParams,
        side: JumpSide,
        theta: float,
        h: float,
        *,
        nu_star: float = DEFAULT_NU_STAR,
        m_intervals: int = DEFAULT_M_INTERVALS,
        time_order: TimeOrder = DEFAULT_TIME_ORDER,  # type: ignore[assignment]
    ) -> InfVarConfig:
        sp = side.select(params)
        return cls(side, sp.nu, sp.lam, sp.sqrt_v, h, theta, nu_star, m_intervals, time_order)

    @property
    def delta(self) -> float:
        return (self.nu_star - self.nu) / self.m_intervals

    @property
    def nodes(self) -> np.ndarray:
        """Quadrature nodes ``ν_i = ν + iΔ``."""
        return self.nu + self.delta * np.arange(self.m_intervals + 1)

    @property
    def weights(self) -> np.ndarray:
        """Per-unit-time factor weights ``w_i = a_i √V λ Δ / 3``."""
        return simpson_weights(self.m_intervals) * self.sqrt_v * self.lam * self.delta / 3.0

    @property
    def exponents(self) -> np.ndarray:
        """Fractional-power exponents ``m_i = w_i θ``."""
        return self.weights * self.theta


# ──────────────────────────────────────────────────────────────────────────────
# Factor pieces
# ──────────────────────────────────────────────────────────────────────────────

def convection_speed(nu_i: float, weight: float, side: JumpSide) -> float:
    """Coefficient ``κ_i = w_i log((ν_i ∓ 1)/ν_i)`` of ``∂x`` in one factor."""
    shifted = nu_i - side.sign
    if not shifted > 0:
        raise DomainError("convection_speed", f"log argument ({shifted:g}/{nu_i:g}) is not positive")
    return weight * math.log(shifted / nu_i)


def upwind_d1(side: JumpSide, n: int, h: float) -> BandedMatrix:
    """Upwind first derivative of the convection factors, closed with edge ghosts.

    The positive side convects rightward (κ < 0) and reads from the left; the
    negative side convects leftward and reads from the right.
    """
    if side is JumpSide.POSITIVE:
        return build_backward_d1(n, h, closure="edge")
    return build_forward_d1(n, h, closure="edge")


def convection_pair(
    nu_i: float, weight: float, theta: float, side: JumpSide, n: int, h: float, time_order: TimeOrder = "order2"
) -> tuple[BandedMatrix, BandedMatrix]:
    """Matrix pair of the convection factor ``exp(θκ_i∂x)``.

    ``order2`` is Crank-Nicolson ``[1 - Pθ/2]C* = [1 + Pθ/2]C``; ``order3`` is
    ``[1 - 2Pθ/3 + P²θ²/6]C* = [1 + Pθ/3]C``, with ``P = κ_i D1``.
    """
    p = upwind_d1(side, n, h).scaled(convection_speed(nu_i, weight, side))
    ident = BandedMatrix.identity(n)
    if time_order == "order2":
        return ident - p.scaled(theta / 2), ident + p.scaled(theta / 2)
    p2 = band_mul(p, p)
    return ident - p.scaled(2 * theta / 3) + p2.scaled(theta**2 / 6), ident + p.scaled(theta / 3)


def convection_factor_step(
    nu_i: float, weight: float, theta: float, side: JumpSide, c: PriceVector, *, h: float
) -> PriceVector:
    """Crank-Nicolson convection solve of one quadrature factor.

    Args:
        nu_i: Quadrature node.
        weight: Per-unit-time factor weight ``w_i`` (so ``m_i = w_i θ``).
        theta: Time step.
        side: Jump side; selects the upwind stencil.
        c: Price vector.
        h: Grid step.
    """
    lhs, rhs = convection_pair(nu_i, weight, theta, side, len(c), h, "order2")
    return band_lu_solve(lhs, band_matvec(rhs, c))


def order3_convection_step(
    nu_i: float, weight: float, theta: float, side: JumpSide, c: PriceVector, *, h: float
) -> PriceVector:
    """Third-order convection solve; the left matrix carries the squared stencil."""
    lhs, rhs = convection_pair(nu_i, weight, theta, side, len(c), h, "order3")
    return band_lu_solve(lhs, band_matvec(rhs, c))


def fractional_factor_step(
    nu_i: float, m_i: float, side: JumpSide, c: PriceVector, *, h: float, time_order: TimeOrder = "order2"
) -> PriceVector:
    """Apply ``(1 ∓ ∂x/ν_i)^{-m_i}`` by interpolating integer-power solves in m."""
    orders = _FRACTIONAL_ORDERS[time_order]
    if not 0 <= m_i < max(orders):
        raise SchemeError("infvar", f"m_i={m_i:g} outside [0, {max(orders)}) for {time_order}")
    out, _ = interpolate_power(fractional_base(side, nu_i, len(c), h), c, m_i, orders)
    return out


# ──────────────────────────────────────────────────────────────────────────────
# Full step
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class _Factor:
    nu_i: float
    m_i: float
    conv_lhs: BandedMatrix
    conv_rhs: BandedMatrix
    base: BandedMatrix


@dataclass(frozen=True)
class InfVarStepper:
    """α = 1 stepper holding the M + 1 factor matrices of one configuration."""

    cfg: InfVarConfig
    factors: tuple[_Factor, ...]
    scheme: str = "infvar"

    @classmethod
    def build(cls, cfg: InfVarConfig, n: int) -> InfVarStepper:
        factors = []
        for nu_i, w_i in zip(cfg.nodes, cfg.weights):
            lhs, rhs = convection_pair(nu_i, w_i, cfg.theta, cfg.side, n, cfg.h, cfg.time_order)
            factors.append(_Factor(float(nu_i), float(w_i * cfg.theta), lhs, rhs, fractional_base(cfg.side, nu_i, n, cfg.h)))
        _log.debug(
            "infvar stepper: %d factors, nu*=%g, max m_i=%.4g, order=%s",
            len(factors), cfg.nu_star, float(cfg.exponents.max()), cfg.time_order,
        )
        return cls(cfg, tuple(factors))

    def step(self, c: PriceVector, *, reverse: bool = False) -> PriceVector:
        """Advance one time step; ``reverse`` applies the factors from ``i = M`` down."""
        orders = _FRACTIONAL_ORDERS[self.cfg.time_order]
        out = np.asarray(c, dtype=float)
        spread = 0.0
        for f in reversed(self.factors) if reverse else self.factors:
            out = band_lu_solve(f.conv_lhs, band_matvec(f.conv_rhs, out))
            out, s = interpolate_power(f.base, out, f.m_i, orders)
            spread = max(spread, s)
        _log.debug("infvar step: max interpolation spread %.3e", spread)
        return out


def infvar_step(cfg: InfVarConfig, c_k: PriceVector) -> PriceVector:
    """One α = 1 time step: convection then fractional power for each factor in turn."""
    return InfVarStepper.build(cfg, len(c_k)).step(c_k)
