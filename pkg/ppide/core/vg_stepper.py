"""Exponent α = 0 (variance-gamma limit).

The exact step is ``C⁺ = (1 ∓ ∂x/ν)^{-m} C`` with real ``m = √V λ θ``. It is
evaluated by solving with integer powers of the one-sided factor and
interpolating the resulting price vectors in ``m``, node by node.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ppide.constants import VG_INTEGER_ORDERS, VG_MAX_M
from ppide.core.banded import BandedMatrix, band_lu_solve
from ppide.core.model import GtspParams, JumpSide, PriceVector
from ppide.core.operators import green_base
from ppide.core.stability import vg_admissible
from ppide.utils.exceptions import ParameterError, SchemeError, StabilityError
from ppide.utils.interpolation import combine, lagrange_weights
from ppide.utils.logger import get_logger

_log = get_logger(__name__)


@dataclass(frozen=True)
class VgStepConfig:
    """One side of the α = 0 scheme.

    ``interpolation_orders`` are the integer exponents solved for and used as
    interpolation nodes in ``m``.
    """

    side: JumpSide
    m_real: float
    nu: float
    h: float
    interpolation_orders: tuple[int, ...] = VG_INTEGER_ORDERS

    def __post_init__(self) -> None:
        if not self.m_real >= 0:
            raise ParameterError("m_real", self.m_real, "negative exponents are not supported")
        if not (self.nu > 0 and self.h > 0):
            raise ParameterError("vg", (self.nu, self.h), "nu and h must be positive")
        orders = tuple(self.interpolation_orders)
        if len(set(orders)) != len(orders) or any(o < 0 or o > 3 for o in orders) or len(orders) < 2:
            raise ParameterError("interpolation_orders", orders, "need at least two distinct integers in 0..3")
        ok, condition = vg_admissible(self.nu, self.h)
        if not ok:
            raise StabilityError(condition)

    @classmethod
    def from_model(
        cls, params: GtspParams, side: JumpSide, theta: float, h: float,
        interpolation_orders: Sequence[int] = VG_INTEGER_ORDERS,
    ) -> VgStepConfig:
        sp = side.select(params)
        return cls(side, sp.sqrt_v * sp.lam * theta, sp.nu, h, tuple(interpolation_orders))


def fractional_base(side: JumpSide, nu: float, n: int, h: float) -> BandedMatrix:
    """``I - M_f/ν`` for upward jumps, ``I + M_b/ν`` for downward jumps."""
    return green_base(side, nu, n, h).scaled(1.0 / nu)


def integer_powers(base: BandedMatrix, c: PriceVector, max_power: int) -> list[np.ndarray]:
    """Return ``[c, B⁻¹c, B⁻²c, …, B^{-max_power}c]`` by successive triangular solves."""
    out = [np.asarray(c, dtype=float)]
    for _ in range(max_power):
        out.append(band_lu_solve(base, out[-1]))
    return out


def interpolate_power(
    base: BandedMatrix, c: PriceVector, m: float, orders: Sequence[int]
) -> tuple[np.ndarray, float]:
    """Approximate ``B^{-m} c`` by Lagrange interpolation over integer powers.

    Returns:
        The interpolated vector and the spread ``max|B⁻¹c - c|``.
    """
    powers = integer_powers(base, c, max(orders))
    spread = float(np.max(np.abs(powers[1] - powers[0]))) if len(powers) > 1 else 0.0
    weights = lagrange_weights(orders, m)
    return combine(weights, [powers[o] for o in orders]), spread


@dataclass(frozen=True)
class VgStepper:
    """Reusable α = 0 stepper with the factor matrix assembled once."""

    cfg: VgStepConfig
    base: BandedMatrix
    scheme: str = "vg"

    @classmethod
    def build(cls, cfg: VgStepConfig, n: int) -> VgStepper:
        return cls(cfg, fractional_base(cfg.side, cfg.nu, n, cfg.h))

    def step(self, c: PriceVector) -> PriceVector:
        cfg = self.cfg
        if cfg.m_real >= max(VG_MAX_M, max(cfg.interpolation_orders)):
            raise SchemeError("vg", f"m={cfg.m_real:g} too large; reduce the time step")
        out, spread = interpolate_power(self.base, c, cfg.m_real, cfg.interpolation_orders)
        _log.debug("vg step m=%.6g spread=%.3e", cfg.m_real, spread)
        return out


def vg_integer_step(cfg: VgStepConfig, m_int: int, c_k: PriceVector) -> PriceVector:
    """Solve ``(I ∓ D1/ν)^{m_int} C⁺ = C`` by ``m_int`` triangular solves."""
    if m_int < 0 or m_int > 3:
        raise ParameterError("m_int", m_int, "must be an integer in 0..3")
    base = fractional_base(cfg.side, cfg.nu, len(c_k), cfg.h)
    return integer_powers(base, c_k, m_int)[-1]


def vg_step(cfg: VgStepConfig, c_k: PriceVector) -> PriceVector:
    """Quadratic-in-m interpolation of the α = 0 step at ``cfg.m_real``."""
    return VgStepper.build(cfg, len(c_k)).step(c_k)
