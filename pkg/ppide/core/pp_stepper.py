"""Padé time steppers for the pseudo-parabolic equation ``𝒜 ∂τC = κ C``.

With ``𝓑 = κ𝒜⁻¹ - c·I`` (``c`` the optional compensator) one step of length
θ approximates ``exp(θ𝓑)`` by a Padé ratio. Multiplying numerator and
denominator by powers of 𝒜 turns every ratio into a pair of banded matrices,
so a step is one banded matvec and one banded solve:

    cn11    (1,1)  [𝒜 - θ/2 N] C⁺ = [𝒜 + θ/2 N] C
    pade12  (1,2)  [𝒜² - 2θ/3 𝒜N + θ²/6 N²] C⁺ = [𝒜² + θ/3 𝒜N] C
    pade22  (2,2)  [𝒜² - θ/2 𝒜N + θ²/12 N²] C⁺ = [𝒜² + θ/2 𝒜N + θ²/12 N²] C

where ``N = κI - c𝒜`` and ``κ = rhs_sign · delta_weight · √V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Protocol

import numpy as np

from ppide.constants import DEFAULT_DELTA_WEIGHT, DEFAULT_PADE, DEFAULT_RHS_SIGN, PADE_KINDS
from ppide.core.banded import BandedMatrix, band_lu_solve, band_matvec, band_mul
from ppide.core.model import PriceVector
from ppide.core.operators import build_basic_operator
from ppide.utils.exceptions import NumericalError, ParameterError, SchemeError
from ppide.utils.logger import get_logger

_log = get_logger(__name__)

PadeKind = Literal["cn11", "pade12", "pade22"]


class Stepper(Protocol):
    """Anything that advances a price vector by one time step."""

    scheme: str

    def step(self, c: PriceVector) -> PriceVector: ...


@dataclass(frozen=True)
class SchemeConfig:
    """Time-stepping choice for the integer-α pseudo-parabolic path.

    ``rhs_sign`` selects the sign of the right-hand side (+1 adds the jump
    generator to ``∂C/∂τ``). ``delta_weight`` is the share of the Green
    function's delta mass counted on the half line: 0.5 gives the published
    coefficients (``√V/4`` in Crank-Nicolson), 1.0 makes 𝓑 the exact inverse
    of the discrete Green operator.
    """

    pade: PadeKind = DEFAULT_PADE  # type: ignore[assignment]
    theta: float = 0.0
    sqrt_v: float = 1.0
    compensated: bool = False
    rhs_sign: int = DEFAULT_RHS_SIGN
    delta_weight: float = DEFAULT_DELTA_WEIGHT

    def __post_init__(self) -> None:
        if self.pade not in PADE_KINDS:
            raise ParameterError("pade", self.pade, f"must be one of {PADE_KINDS}")
        if not np.isfinite(self.theta):
            raise ParameterError("theta", self.theta, "must be finite")
        if not self.sqrt_v >= 0:
            raise ParameterError("sqrt_v", self.sqrt_v, "must be nonnegative")
        if self.rhs_sign not in (-1, 1):
            raise ParameterError("rhs_sign", self.rhs_sign, "must be +1 or -1")
        if not self.delta_weight > 0:
            raise ParameterError("delta_weight", self.delta_weight, "must be positive")

    @property
    def kappa(self) -> float:
        """Coefficient of the right-hand side ``κ C``."""
        return self.rhs_sign * self.delta_weight * self.sqrt_v


@dataclass(frozen=True)
class PadeStepper:
    """Assembled ``lhs · C⁺ = rhs · C`` pair for one operator and scheme."""

    lhs: BandedMatrix
    rhs: BandedMatrix
    scheme: str

    @classmethod
    def build(cls, a: BandedMatrix, cfg: SchemeConfig, comp: float = 0.0) -> PadeStepper:
        """Assemble the matrix pair for ``cfg.pade``.

        Args:
            a: Discrete Green-function operator.
            cfg: Scheme configuration.
            comp: Compensator ``λν^αΓ(-α)``; only used when ``cfg.compensated``.
                It is weighted by ``√V`` like the Green-function term.
        """
        theta = cfg.theta
        c = comp * cfg.sqrt_v if cfg.compensated else 0.0
        ident = BandedMatrix.identity(a.n)
        generator = ident.scaled(cfg.kappa) - a.scaled(c)

        if cfg.pade == "cn11":
            lhs = a - generator.scaled(theta / 2)
            rhs = a + generator.scaled(theta / 2)
        else:
            a2 = band_mul(a, a)
            an = band_mul(a, generator)
            n2 = band_mul(generator, generator)
            if 2 * a.n_diagonals - 1 > a.n:
                raise SchemeError(cfg.pade, f"squared operator needs {2 * a.n_diagonals - 1} diagonals > n={a.n}")
            if cfg.pade == "pade12":
                lhs = a2 - an.scaled(2 * theta / 3) + n2.scaled(theta**2 / 6)
                rhs = a2 + an.scaled(theta / 3)
            else:
                lhs = a2 - an.scaled(theta / 2) + n2.scaled(theta**2 / 12)
                rhs = a2 + an.scaled(theta / 2) + n2.scaled(theta**2 / 12)
        return cls(lhs, rhs, cfg.pade)

    def step(self, c: PriceVector) -> PriceVector:
        return band_lu_solve(self.lhs, band_matvec(self.rhs, c))


def _require(cfg: SchemeConfig, kind: str) -> None:
    if cfg.pade != kind:
        raise SchemeError(kind, f"config selects {cfg.pade!r}")


# ──────────────────────────────────────────────────────────────────────────────
# Single steps
# ──────────────────────────────────────────────────────────────────────────────

def cn_step(a: BandedMatrix, cfg: SchemeConfig, c_k: PriceVector) -> PriceVector:
    """Crank-Nicolson step ``(𝒜 - κθ/2)C⁺ = (𝒜 + κθ/2)C``."""
    _require(cfg, "cn11")
    return PadeStepper.build(a, cfg).step(c_k)


def pade12_step(a: BandedMatrix, cfg: SchemeConfig, c_k: PriceVector) -> PriceVector:
    """Third-order (1,2) Padé step."""
    _require(cfg, "pade12")
    return PadeStepper.build(a, cfg).step(c_k)


def pade22_step(a: BandedMatrix, cfg: SchemeConfig, c_k: PriceVector) -> PriceVector:
    """Fourth-order (2,2) Padé step."""
    _require(cfg, "pade22")
    return PadeStepper.build(a, cfg).step(c_k)


def cn_step_compensated(
    a: BandedMatrix, cfg: SchemeConfig, c_k: PriceVector, comp: float
) -> PriceVector:
    """Crank-Nicolson step of ``𝓑 = κ𝒜⁻¹ - √V·comp·I``.

    ``([1 + √V·comp·θ/2]𝒜 - κθ/2)C⁺ = ([1 - √V·comp·θ/2]𝒜 + κθ/2)C``; with
    ``√V = 1`` and half delta weight the Green term is ``θ/4``.
    """
    _require(cfg, "cn11")
    if not cfg.compensated:
        raise SchemeError("cn11", "compensated step requested on an uncompensated config")
    if not comp >= 0:
        raise ParameterError("comp", comp, "must be nonnegative")
    return PadeStepper.build(a, cfg, comp).step(c_k)


# ──────────────────────────────────────────────────────────────────────────────
# Laplace-jump model
# ──────────────────────────────────────────────────────────────────────────────

def basic_model_pair(alpha: float, lam: float, theta: float, n: int, h: float) -> PadeStepper:
    """Crank-Nicolson pair for ``∂τu = λ(u + α²𝒜⁻¹u)`` with ``𝒜 = D² - α²I``."""
    a = build_basic_operator(alpha, n, h)
    jump = a.shifted(alpha * alpha).scaled(theta * lam / 2)
    return PadeStepper(a - jump, a + jump, "basic_cn")


def basic_model_step(
    alpha: float, lam: float, theta: float, c_k: PriceVector, *, h: float
) -> PriceVector:
    """One Crank-Nicolson step of the Laplace-jump model on a grid with step *h*."""
    return basic_model_pair(alpha, lam, theta, len(c_k), h).step(np.asarray(c_k, dtype=float))


# ──────────────────────────────────────────────────────────────────────────────
# Marching
# ──────────────────────────────────────────────────────────────────────────────

def march(stepper: Stepper, c0: PriceVector, n_steps: int, module: str = "pp_stepper") -> PriceVector:
    """Apply *stepper* ``n_steps`` times, aborting on non-finite values."""
    c = np.asarray(c0, dtype=float).copy()
    for k in range(n_steps):
        c = stepper.step(c)
        if not np.all(np.isfinite(c)):
            raise NumericalError(module, k, "non-finite values in solution")
    _log.debug("%s march: %d steps, scheme=%s, n=%d", module, n_steps, stepper.scheme, len(c))
    return c
