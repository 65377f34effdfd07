"""Tests for ppide.core.alpha_bridge — integer-anchor solves and interpolation in α."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest

from ppide.core.alpha_bridge import (
    AlphaQuery,
    PricingProblem,
    build_side_stepper,
    cubic_lagrange,
    default_anchors,
    mass_ratios,
    price_real_alpha,
    solve_anchor,
    split_jump_march,
)
from ppide.core.grid import build_grid
from ppide.core.infvar_stepper import InfVarStepper
from ppide.core.model import GtspParams, JumpSide, MarketConfig, terminal_condition
from ppide.core.pp_stepper import PadeStepper
from ppide.core.vg_stepper import VgStepper
from ppide.utils.exceptions import AnchorSolveError, ParameterError, SchemeError


@pytest.fixture
def problem() -> PricingProblem:
    market = MarketConfig()
    grid = build_grid(math.log(50.0), math.log(200.0), 64, market.maturity, 10)
    return PricingProblem(GtspParams(nu_plus=2.0), market, grid)


def _with_params(problem: PricingProblem, **kw) -> PricingProblem:
    return dataclasses.replace(problem, params=dataclasses.replace(problem.params, **kw))


# ---------------------------------------------------------------------------
# Anchors & queries
# ---------------------------------------------------------------------------

class TestDefaultAnchors:
    @pytest.mark.parametrize(
        ("alpha", "expected"),
        [(-2.5, (-4, -3, -2, -1)), (-2.0, (-4, -3, -2, -1)), (-0.5, (-3, -2, -1, 0)), (0.5, (-2, -1, 0, 1)), (1.5, (-2, -1, 0, 1))],
    )
    def test_anchors(self, alpha: float, expected: tuple[int, ...]) -> None:
        assert default_anchors(alpha) == expected


class TestAlphaQuery:
    def test_default_anchors_and_mode(self) -> None:
        q = AlphaQuery(-2.5)
        assert q.anchor_alphas == (-4, -3, -2, -1)
        assert q.mode == "interpolation"

    def test_extrapolation_mode(self) -> None:
        assert AlphaQuery(1.5).mode == "extrapolation"

    def test_explicit_anchors_sorted(self) -> None:
        assert AlphaQuery(-1.5, (0, -3, -1, -2)).anchor_alphas == (-3, -2, -1, 0)

    @pytest.mark.parametrize(
        ("alpha", "anchors"),
        [(2.0, ()), (math.nan, ()), (-1.5, (-3, -2, -1)), (-1.5, (-3, -2, -2, -1)), (-1.5, (-2, -1, 0, 2)), (-1.5, (-3, -2, -1, 0.5))],
    )
    def test_invalid(self, alpha: float, anchors: tuple) -> None:
        with pytest.raises(ParameterError):
            AlphaQuery(alpha, anchors)


# ---------------------------------------------------------------------------
# Cubic interpolation
# ---------------------------------------------------------------------------

class TestCubicLagrange:
    def test_powers_of_two(self) -> None:
        assert cubic_lagrange([(0, 1), (1, 2), (2, 4), (3, 8)], 1.5) == pytest.approx(2.8125)

    def test_exact_on_cubics(self) -> None:
        f = lambda a: a**3 - 2.0 * a + 1.0  # noqa: E731
        nodes = [(a, f(a)) for a in (-4, -3, -2, -1)]
        assert cubic_lagrange(nodes, -2.5) == pytest.approx(f(-2.5))
        assert cubic_lagrange(nodes, 0.5) == pytest.approx(f(0.5))

    def test_reproduces_nodes(self) -> None:
        nodes = [(-4, 0.3), (-3, 0.1), (-2, 0.7), (-1, 0.2)]
        assert cubic_lagrange(nodes, -2) == 0.7

    def test_needs_four_points(self) -> None:
        with pytest.raises(ParameterError):
            cubic_lagrange([(0, 1), (1, 2), (2, 4)], 1.5)

    def test_duplicate_abscissae(self) -> None:
        with pytest.raises(ValueError):
            cubic_lagrange([(0, 1), (1, 2), (1, 4), (3, 8)], 1.5)


# ---------------------------------------------------------------------------
# Problems & steppers
# ---------------------------------------------------------------------------

class TestPricingProblem:
    def test_duplicate_sides(self, problem) -> None:
        with pytest.raises(ParameterError):
            dataclasses.replace(problem, sides=(JumpSide.POSITIVE, JumpSide.POSITIVE))

    def test_negative_steps(self, problem) -> None:
        with pytest.raises(ParameterError):
            dataclasses.replace(problem, n_steps=-1)

    def test_with_alpha_targets_query_side(self, problem) -> None:
        p = dataclasses.replace(problem, query_side=JumpSide.NEGATIVE).with_alpha(-3.0)
        assert p.params.alpha_minus == -3.0
        assert p.params.alpha_plus == problem.params.alpha_plus


class TestBuildSideStepper:
    @pytest.mark.parametrize(("alpha", "kind"), [(-2.0, PadeStepper), (0.0, VgStepper), (1.0, InfVarStepper)])
    def test_dispatch(self, problem, alpha: float, kind: type) -> None:
        assert isinstance(build_side_stepper(problem.with_alpha(alpha), JumpSide.POSITIVE), kind)

    def test_non_integer_rejected(self, problem) -> None:
        with pytest.raises(SchemeError):
            build_side_stepper(problem.with_alpha(-1.5), JumpSide.POSITIVE)


class TestSplitJumpMarch:
    def test_zero_steps_returns_terminal_data(self, problem) -> None:
        out = split_jump_march(dataclasses.replace(problem, n_steps=0))
        np.testing.assert_array_equal(out, terminal_condition(problem.grid, problem.market))

    def test_two_sided_finite(self, problem) -> None:
        p = dataclasses.replace(problem, sides=(JumpSide.POSITIVE, JumpSide.NEGATIVE))
        out = split_jump_march(p)
        assert out.shape == (65,)
        assert np.all(np.isfinite(out))


# ---------------------------------------------------------------------------
# Real-α pricing
# ---------------------------------------------------------------------------

class TestPriceRealAlpha:
    def test_anchor_reproduced(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(-2.0), problem)
        np.testing.assert_array_equal(sol.values, sol.anchor_values[-2])
        np.testing.assert_allclose(sol.values, split_jump_march(problem.with_alpha(-2.0)), rtol=1e-12)
        assert sol.metadata.weights == (0.0, 0.0, 1.0, 0.0)
        assert not sol.metadata.compensated

    def test_interpolated_between_anchors(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(-2.5), problem)
        assert sol.metadata.mode == "interpolation"
        assert sum(sol.metadata.weights) == pytest.approx(1.0)
        assert np.all(np.isfinite(sol.values))

    def test_zero_anchor_forces_compensation(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(-0.5), problem)
        assert sol.metadata.compensated
        assert sol.metadata.schemes[0] == "vg"
        assert sol.metadata.schemes[-1] == "cn11"

    def test_extrapolation(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(1.5), problem)
        assert sol.metadata.mode == "extrapolation"
        assert sol.metadata.schemes[1] == "infvar"
        assert np.all(np.isfinite(sol.values))

    def test_threads_do_not_change_result(self, problem) -> None:
        one = price_real_alpha(AlphaQuery(-2.5), problem, threads=1)
        two = price_real_alpha(AlphaQuery(-2.5), problem, threads=2)
        np.testing.assert_array_equal(one.values, two.values)

    def test_threads_validated(self, problem) -> None:
        with pytest.raises(ParameterError):
            price_real_alpha(AlphaQuery(-2.5), problem, threads=0)

    def test_failing_anchor_identified(self) -> None:
        market = MarketConfig()
        grid = build_grid(0.0, 40.0, 8, market.maturity, 2)
        bad = PricingProblem(GtspParams(nu_plus=0.5), market, grid)
        with pytest.raises(AnchorSolveError) as info:
            solve_anchor(bad, 0)
        assert info.value.alpha == 0


# ---------------------------------------------------------------------------
# Jump-mass scaling
# ---------------------------------------------------------------------------

class TestMassScaling:
    def test_ratios(self, problem) -> None:
        ratios = mass_ratios(AlphaQuery(-2.5, scaling="mass"), problem)
        # nu = 2: ratio = 2^{-2.5 - a} Γ(2.5) / Γ(-a).
        expected = [2.0 ** (-2.5 - a) * math.gamma(2.5) / math.gamma(-a) for a in (-4, -3, -2, -1)]
        np.testing.assert_allclose(ratios, expected, rtol=1e-12)

    @pytest.mark.parametrize("alpha", [-0.5, 0.5])
    def test_ratios_undefined_near_zero(self, problem, alpha: float) -> None:
        assert mass_ratios(AlphaQuery(alpha, scaling="mass"), problem) is None

    def test_anchor_reproduced(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(-2.0, scaling="mass"), problem)
        np.testing.assert_array_equal(sol.values, sol.anchor_values[-2])
        assert sol.metadata.scaling == "mass"

    def test_weights_carry_ratios(self, problem) -> None:
        plain = price_real_alpha(AlphaQuery(-2.5), problem)
        scaled = price_real_alpha(AlphaQuery(-2.5, scaling="mass"), problem)
        ratios = mass_ratios(AlphaQuery(-2.5, scaling="mass"), problem)
        np.testing.assert_allclose(scaled.metadata.weights, np.array(plain.metadata.weights) * ratios, rtol=1e-12)

    def test_increment_combination(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(-2.5, scaling="mass"), problem)
        base = terminal_condition(problem.grid, problem.market)
        expected = base + sum(w * (sol.anchor_values[a] - base) for a, w in zip(sol.metadata.anchors, sol.metadata.weights))
        np.testing.assert_allclose(sol.values, expected, rtol=1e-12, atol=1e-12)

    def test_two_sided_baseline_keeps_other_side(self, problem) -> None:
        p = dataclasses.replace(problem, sides=(JumpSide.POSITIVE, JumpSide.NEGATIVE))
        sol = price_real_alpha(AlphaQuery(-2.5, scaling="mass"), p)
        base = split_jump_march(dataclasses.replace(p, sides=(JumpSide.NEGATIVE,)))
        expected = base + sum(w * (sol.anchor_values[a] - base) for a, w in zip(sol.metadata.anchors, sol.metadata.weights))
        np.testing.assert_allclose(sol.values, expected, rtol=1e-12, atol=1e-12)

    def test_falls_back_when_zero_anchor_present(self, problem) -> None:
        sol = price_real_alpha(AlphaQuery(-1.5, (-3, -2, -1, 0), scaling="mass"), problem)
        assert sol.metadata.scaling == "plain"
        assert sum(sol.metadata.weights) == pytest.approx(1.0)

    def test_unknown_scaling_rejected(self) -> None:
        with pytest.raises(ParameterError):
            AlphaQuery(-2.5, scaling="log")  # type: ignore[arg-type]
