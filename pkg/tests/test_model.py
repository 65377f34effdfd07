"""Tests for ppide.core.model — parameters, Lévy density, compensator, terminal data."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from ppide.core.grid import build_grid
from ppide.core.model import (
    GtspParams,
    JumpSide,
    MarketConfig,
    black_scholes,
    compensator,
    levy_density,
    terminal_condition,
)
from ppide.utils.exceptions import DomainError, ParameterError


def _bs_put(s: float, k: float, r: float, vol: float, t: float) -> float:
    """Scalar Black-Scholes put via math.erf."""
    n = lambda z: 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))  # noqa: E731
    d1 = (math.log(s / k) + (r + 0.5 * vol * vol) * t) / (vol * math.sqrt(t))
    d2 = d1 - vol * math.sqrt(t)
    return k * math.exp(-r * t) * n(-d2) - s * n(-d1)


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------

class TestGtspParams:
    def test_defaults_valid(self) -> None:
        p = GtspParams()
        assert p.sqrt_v_r == 1.0

    @pytest.mark.parametrize("field", ["lambda_plus", "nu_minus"])
    def test_nonpositive_rejected(self, field: str) -> None:
        with pytest.raises(ParameterError):
            GtspParams(**{field: 0.0})

    def test_alpha_two_rejected(self) -> None:
        with pytest.raises(ParameterError):
            GtspParams(alpha_plus=2.0)

    def test_sqrt_v(self) -> None:
        assert GtspParams(v_l=4.0).sqrt_v_l == 2.0


class TestJumpSide:
    def test_select_positive(self) -> None:
        p = GtspParams(lambda_plus=0.3, nu_plus=2.0, alpha_plus=-2.0, v_r=9.0)
        sp = JumpSide.POSITIVE.select(p)
        assert (sp.lam, sp.nu, sp.alpha, sp.sqrt_v) == (0.3, 2.0, -2.0, 3.0)
        assert sp.p == 1.0

    def test_select_negative(self) -> None:
        p = GtspParams(lambda_minus=0.4, nu_minus=3.0, alpha_minus=0.5)
        sp = JumpSide.NEGATIVE.select(p)
        assert (sp.lam, sp.nu, sp.alpha) == (0.4, 3.0, 0.5)

    def test_signs(self) -> None:
        assert JumpSide.POSITIVE.sign == 1
        assert JumpSide.NEGATIVE.sign == -1


class TestMarketConfig:
    def test_seed_defaults_to_maturity(self) -> None:
        m = MarketConfig(maturity=0.5)
        assert m.t_seed == 0.5

    @pytest.mark.parametrize(
        "kwargs", [{"strike": 0.0}, {"maturity": -1.0}, {"vol": 0.0}, {"option_kind": "digital"}, {"seed_time": 0.0}]
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(ParameterError):
            MarketConfig(**kwargs)


# ---------------------------------------------------------------------------
# levy_density / compensator
# ---------------------------------------------------------------------------

class TestLevyDensity:
    def test_value_at_one(self) -> None:
        assert levy_density(1.0, GtspParams()) == pytest.approx(0.2 * math.exp(-1.0))

    def test_symmetric_parameters(self) -> None:
        p = GtspParams()
        assert levy_density(-1.0, p) == pytest.approx(levy_density(1.0, p))

    def test_origin_rejected(self) -> None:
        with pytest.raises(DomainError):
            levy_density(np.array([1.0, 0.0]), GtspParams())

    def test_blows_up_near_origin(self) -> None:
        p = GtspParams(alpha_plus=0.5)
        assert levy_density(1e-6, p) > 1e6

    @pytest.mark.parametrize("alpha", [-1.0, -0.5, 0.5])
    def test_decreasing_in_abs_y(self, alpha: float) -> None:
        y = np.linspace(0.1, 5.0, 50)
        values = levy_density(y, GtspParams(alpha_plus=alpha))
        assert np.all(np.diff(values) < 0)

    def test_hump_below_minus_one(self) -> None:
        # y e^{-y} peaks at y = 1 when nu = 1 and alpha = -2.
        y = np.array([0.5, 1.0, 2.0])
        values = levy_density(y, GtspParams(alpha_plus=-2.0))
        assert values[1] > values[0] and values[1] > values[2]


class TestCompensator:
    def test_gamma_one(self) -> None:
        assert compensator(0.2, 1.0, -1.0) == pytest.approx(0.2)

    def test_half_integer(self) -> None:
        assert compensator(0.2, 2.0, -0.5) == pytest.approx(0.250663, rel=1e-5)

    def test_pole(self) -> None:
        with pytest.raises(DomainError):
            compensator(0.2, 1.0, 0.0)

    @pytest.mark.parametrize("alpha", [-0.5, -1.0, -1.5, -2.0])
    def test_matches_quadrature(self, alpha: float) -> None:
        f = lambda y: 0.2 * math.exp(-1.5 * y) * y ** (-(1.0 + alpha))  # noqa: E731
        head, _ = integrate.quad(f, 0.0, 1.0, limit=200)
        tail, _ = integrate.quad(f, 1.0, np.inf, limit=200)
        assert compensator(0.2, 1.5, alpha) == pytest.approx(head + tail, rel=1e-7)


# ---------------------------------------------------------------------------
# Terminal condition
# ---------------------------------------------------------------------------

class TestTerminalCondition:
    def test_atm_matches_scalar_formula(self) -> None:
        assert black_scholes(100.0, 100.0, 0.01, 0.1, 0.25) == pytest.approx(
            _bs_put(100.0, 100.0, 0.01, 0.1, 0.25), abs=1e-10
        )

    def test_put_call_parity(self) -> None:
        s, k, r, t = 90.0, 100.0, 0.01, 0.5
        call = black_scholes(s, k, r, 0.2, t, "call")
        put = black_scholes(s, k, r, 0.2, t, "put")
        assert call - put == pytest.approx(s - k * math.exp(-r * t))

    def test_put_limits_and_monotone(self) -> None:
        m = MarketConfig()
        g = build_grid(math.log(1e-8), math.log(500.0), 64, m.maturity, 10)
        c = terminal_condition(g, m)
        assert c[0] == pytest.approx(m.strike * math.exp(-m.rate * m.t_seed), rel=1e-9)
        assert c[-1] < 1e-8
        assert np.all(np.diff(c) <= 1e-12)

    def test_call_nondecreasing(self) -> None:
        m = MarketConfig(option_kind="call")
        g = build_grid(math.log(1.0), math.log(500.0), 64, m.maturity, 10)
        assert np.all(np.diff(terminal_condition(g, m)) >= -1e-12)
