"""Pricing at real α by interpolating full solutions at integer anchors.

Each anchor exponent is marched with the scheme that handles it exactly:
Padé steppers for α ≤ -1, the variance-gamma step for α = 0 and the
quadrature-splitting step for α = 1. The four anchor solutions are then
combined node by node with cubic Lagrange weights in α, either directly or
after scaling each anchor's jump increment by the ratio of jump masses.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ppide.constants import (
    ALPHA_SCALINGS,
    DEFAULT_DELTA_WEIGHT,
    DEFAULT_M_INTERVALS,
    DEFAULT_NU_STAR,
    DEFAULT_PADE,
    DEFAULT_RHS_SIGN,
    DEFAULT_THREADS,
    DEFAULT_TIME_ORDER,
)
from ppide.core.grid import Grid
from ppide.core.infvar_stepper import InfVarConfig, InfVarStepper
from ppide.core.model import GtspParams, JumpSide, MarketConfig, PriceVector, compensator, terminal_condition
from ppide.core.operators import OperatorSpec, build_A_operator
from ppide.core.pp_stepper import PadeStepper, SchemeConfig, Stepper
from ppide.core.vg_stepper import VgStepConfig, VgStepper
from ppide.utils.exceptions import AnchorSolveError, NumericalError, ParameterError, PpideError, SchemeError
from ppide.utils.interpolation import combine, lagrange_weights
from ppide.utils.logger import get_logger

_log = get_logger(__name__)

InterpolationMode = Literal["interpolation", "extrapolation"]
AlphaScaling = Literal["plain", "mass"]

MAX_ANCHOR: int = 1


# ──────────────────────────────────────────────────────────────────────────────
# Problem description
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PricingProblem:
    """Everything a full time march needs apart from the exponent being solved.

    ``sides`` lists the splitting sub-steps applied per time step, in order.
    ``query_side`` is the side whose α is replaced by the anchor exponents.
    ``n_steps`` defaults to ``grid.n_time``; zero returns the terminal data.
    """

    params: GtspParams
    market: MarketConfig
    grid: Grid
    pade: str = DEFAULT_PADE
    compensated: bool = False
    rhs_sign: int = DEFAULT_RHS_SIGN
    delta_weight: float = DEFAULT_DELTA_WEIGHT
    nu_star: float = DEFAULT_NU_STAR
    m_intervals: int = DEFAULT_M_INTERVALS
    time_order: str = DEFAULT_TIME_ORDER
    sides: tuple[JumpSide, ...] = (JumpSide.POSITIVE,)
    query_side: JumpSide = JumpSide.POSITIVE
    n_steps: int | None = None

    def __post_init__(self) -> None:
        if not self.sides or len(set(self.sides)) != len(self.sides):
            raise ParameterError("sides", self.sides, "need one or two distinct jump sides")
        if self.n_steps is not None and self.n_steps < 0:
            raise ParameterError("n_steps", self.n_steps, "must be nonnegative")

    @property
    def steps(self) -> int:
        return self.grid.n_time if self.n_steps is None else self.n_steps

    def with_alpha(self, alpha: float) -> PricingProblem:
        """Copy with the query side's exponent set to *alpha*."""
        key = "alpha_plus" if self.query_side is JumpSide.POSITIVE else "alpha_minus"
        return dataclasses.replace(self, params=dataclasses.replace(self.params, **{key: alpha}))


def _scheme_name(alpha: float, pade: str) -> str:
    if alpha == 0:
        return "vg"
    if alpha == 1:
        return "infvar"
    return pade


def build_side_stepper(problem: PricingProblem, side: JumpSide) -> Stepper:
    """Assemble the stepper for one side at that side's (integer) exponent.

    Raises:
        SchemeError: If the exponent is not an integer ``<= 1``.
    """
    sp = side.select(problem.params)
    g = problem.grid
    alpha = sp.alpha
    if alpha != round(alpha) or alpha > MAX_ANCHOR:
        raise SchemeError("alpha_bridge", f"no direct scheme for alpha={alpha:g} on the {side.value} side")
    if alpha == 0:
        cfg = VgStepConfig.from_model(problem.params, side, g.theta, g.h)
        return VgStepper.build(cfg, g.n_nodes)
    if alpha == 1:
        cfg_inf = InfVarConfig.from_model(
            problem.params, side, g.theta, g.h,
            nu_star=problem.nu_star, m_intervals=problem.m_intervals, time_order=problem.time_order,  # type: ignore[arg-type]
        )
        return InfVarStepper.build(cfg_inf, g.n_nodes)
    spec = OperatorSpec.from_side(side, sp, g.n_nodes, g.h)
    scheme = SchemeConfig(
        problem.pade, g.theta, sp.sqrt_v,  # type: ignore[arg-type]
        compensated=problem.compensated, rhs_sign=problem.rhs_sign, delta_weight=problem.delta_weight,
    )
    comp = compensator(sp.lam, sp.nu, alpha) if problem.compensated else 0.0
    return PadeStepper.build(build_A_operator(spec), scheme, comp)


def split_jump_march(problem: PricingProblem, c0: PriceVector | None = None) -> PriceVector:
    """March from the terminal data, applying each side's sub-step in turn every step.

    Raises:
        NumericalError: On non-finite values, naming the step.
    """
    c = terminal_condition(problem.grid, problem.market) if c0 is None else np.asarray(c0, dtype=float).copy()
    steppers = [build_side_stepper(problem, side) for side in problem.sides]
    for k in range(problem.steps):
        for stepper in steppers:
            c = stepper.step(c)
        if not np.all(np.isfinite(c)):
            raise NumericalError("alpha_bridge", k, "non-finite values in split march")
    _log.debug(
        "split march: %d steps, sides=%s, schemes=%s",
        problem.steps, [s.value for s in problem.sides], [s.scheme for s in steppers],
    )
    return c


# ──────────────────────────────────────────────────────────────────────────────
# Interpolation in α
# ──────────────────────────────────────────────────────────────────────────────

def default_anchors(alpha_real: float) -> tuple[int, int, int, int]:
    """Four consecutive integers around *alpha_real*, capped at 0 for ``alpha <= 0`` and at 1 above."""
    top = min(math.ceil(alpha_real) + 1, 0) if alpha_real <= 0 else MAX_ANCHOR
    return (top - 3, top - 2, top - 1, top)


@dataclass(frozen=True)
class AlphaQuery:
    """Target exponent, the four integer anchors used to reach it and the weighting.

    ``plain`` combines the anchor solutions with Lagrange weights. ``mass``
    interpolates the jump increments ``C_a - C_base`` divided by the jump mass
    ``λν^aΓ(-a)``, where ``C_base`` is the march without the query side's jumps.
    ``mass`` needs every anchor and the target below zero.
    """

    alpha_real: float
    anchor_alphas: tuple[int, ...] = field(default=())
    scaling: AlphaScaling = "plain"

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha_real) or self.alpha_real >= 2:
            raise ParameterError("alpha_real", self.alpha_real, "must be finite and below 2")
        anchors = tuple(self.anchor_alphas) or default_anchors(self.alpha_real)
        if len(anchors) != 4 or len(set(anchors)) != 4:
            raise ParameterError("anchor_alphas", anchors, "need four distinct integers")
        if any(a != int(a) or a > MAX_ANCHOR for a in anchors):
            raise ParameterError("anchor_alphas", anchors, f"anchors must be integers <= {MAX_ANCHOR}")
        if self.scaling not in ALPHA_SCALINGS:
            raise ParameterError("scaling", self.scaling, f"must be one of {ALPHA_SCALINGS}")
        object.__setattr__(self, "anchor_alphas", tuple(sorted(int(a) for a in anchors)))

    @property
    def mode(self) -> InterpolationMode:
        lo, hi = self.anchor_alphas[0], self.anchor_alphas[-1]
        return "interpolation" if lo <= self.alpha_real <= hi else "extrapolation"


@dataclass(frozen=True)
class AlphaMetadata:
    alpha_real: float
    anchors: tuple[int, ...]
    mode: InterpolationMode
    schemes: dict[int, str]
    weights: tuple[float, ...]
    compensated: bool
    scaling: AlphaScaling = "plain"


@dataclass(frozen=True)
class AlphaSolution:
    values: PriceVector
    metadata: AlphaMetadata
    anchor_values: dict[int, PriceVector] = field(repr=False, default_factory=dict)


def cubic_lagrange(nodes: Sequence[tuple[float, float]], target: float) -> float:
    """Evaluate the cubic through four ``(α, value)`` pairs at *target*.

    Raises:
        ParameterError: Unless exactly four pairs are given.
        ValueError: On duplicate abscissae.
    """
    if len(nodes) != 4:
        raise ParameterError("nodes", len(nodes), "cubic interpolation needs four points")
    xs, ys = zip(*nodes)
    return float(np.dot(lagrange_weights(xs, target), ys))


def solve_anchor(problem: PricingProblem, alpha: int) -> PriceVector:
    """Full march at integer *alpha* on the query side.

    Raises:
        AnchorSolveError: Wrapping any failure, with the anchor identified.
    """
    try:
        return split_jump_march(problem.with_alpha(float(alpha)))
    except PpideError as exc:
        raise AnchorSolveError(alpha, str(exc)) from exc


def _jump_free_baseline(problem: PricingProblem) -> PriceVector:
    rest = tuple(s for s in problem.sides if s is not problem.query_side)
    if not rest:
        return terminal_condition(problem.grid, problem.market)
    return split_jump_march(dataclasses.replace(problem, sides=rest))


def mass_ratios(q: AlphaQuery, problem: PricingProblem) -> np.ndarray | None:
    """``λν^αΓ(-α) / λν^aΓ(-a)`` for each anchor ``a``, or ``None`` when undefined."""
    sp = problem.query_side.select(problem.params)
    if q.alpha_real >= 0 or max(q.anchor_alphas) > -1 or not sp.lam > 0:
        return None
    target = compensator(sp.lam, sp.nu, q.alpha_real)
    return np.array([target / compensator(sp.lam, sp.nu, a) for a in q.anchor_alphas])


def price_real_alpha(q: AlphaQuery, problem: PricingProblem, *, threads: int = DEFAULT_THREADS) -> AlphaSolution:
    """Interpolate the four anchor solutions to ``q.alpha_real`` node by node.

    Anchors at α = 0 or 1 integrate the compensated generator, so when they
    are present the Padé anchors are switched to the compensated form too.
    A ``mass`` query whose ratios are undefined falls back to ``plain``.
    """
    if threads < 1:
        raise ParameterError("threads", threads, "must be at least 1")
    if any(a >= 0 for a in q.anchor_alphas) and not problem.compensated:
        _log.info("Anchors %s include alpha >= 0; using compensated Pade anchors", q.anchor_alphas)
        problem = dataclasses.replace(problem, compensated=True)
    if q.mode == "extrapolation":
        _log.warning("alpha=%g lies outside anchors %s; extrapolating", q.alpha_real, q.anchor_alphas)

    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="anchor") as pool:
        solved = list(pool.map(lambda a: solve_anchor(problem, a), q.anchor_alphas))
    anchor_values = dict(zip(q.anchor_alphas, solved))

    weights = lagrange_weights(q.anchor_alphas, q.alpha_real)
    scaling = q.scaling
    ratios = mass_ratios(q, problem) if scaling == "mass" else None
    if scaling == "mass" and ratios is None:
        _log.info("No jump-mass ratios for alpha=%g with anchors %s; using plain weights", q.alpha_real, q.anchor_alphas)
        scaling = "plain"
    if ratios is None:
        values = combine(weights, solved)
    else:
        weights = weights * ratios
        base_weight = 1.0 - float(weights.sum())
        values = combine(np.append(weights, base_weight), [*solved, _jump_free_baseline(problem)])
    metadata = AlphaMetadata(
        q.alpha_real,
        q.anchor_alphas,
        q.mode,
        {a: _scheme_name(a, problem.pade) for a in q.anchor_alphas},
        tuple(float(w) for w in weights),
        problem.compensated,
        scaling,  # type: ignore[arg-type]
    )
    _log.debug("alpha=%g from anchors %s (%s, %s)", q.alpha_real, q.anchor_alphas, q.mode, scaling)
    return AlphaSolution(values, metadata, anchor_values)
