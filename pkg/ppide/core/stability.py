"""Stability predicates and spectral measurements for the stepping schemes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import linalg
from scipy.special import gamma

from ppide.constants import (
    DENSE_FALLBACK_MAX_N,
    POWER_ITER_MAX,
    POWER_ITER_RTOL,
    STABILITY_TOL,
    STIFFNESS_WARN_RATIO,
)
from ppide.core.banded import BandedMatrix, band_lu_solve, band_matvec
from ppide.core.model import JumpSide, compensator
from ppide.core.operators import OperatorSpec, build_A_operator, green_base
from ppide.core.pp_stepper import PadeStepper, SchemeConfig
from ppide.utils.exceptions import DomainError
from ppide.utils.logger import get_logger

_log = get_logger(__name__)


class SpectralEstimate(NamedTuple):
    radius: float
    diagonal_ratio: float | None
    method: str
    converged: bool
    inf_norm: float | None


@dataclass(frozen=True)
class StabilityReport:
    """Analytic eigenvalue, measured spectral radius and the verdict."""

    zeta_analytic: float
    spectral_radius_measured: float
    stable: bool
    condition: str
    inf_norm: float | None = None
    stiffness: float = 0.0


# ──────────────────────────────────────────────────────────────────────────────
# Closed forms
# ──────────────────────────────────────────────────────────────────────────────

def zeta_B(sqrt_v: float, lam: float, nu: float, alpha: float, h: float, side: JumpSide) -> float:
    """Eigenvalue ``√V λ Γ(-α) ([ν + 3/(2h)]^α - ν^α)`` of the compensated generator.

    The formula is the same on both sides with that side's parameters.
    """
    if alpha >= 0:
        raise DomainError("zeta_B", f"alpha={alpha} must be negative")
    if not (nu > 0 and h > 0):
        raise DomainError("zeta_B", "nu and h must be positive")
    _log.debug("zeta_B on %s side", side.value)
    return float(sqrt_v * lam * gamma(-alpha) * ((nu + 1.5 / h) ** alpha - nu**alpha))


def vg_eigenvalue(nu: float, h: float, m: float) -> float:
    """Eigenvalue ``(1 + 3/(2hν))^{-m}`` of the discrete α = 0 step."""
    return float((1.0 + 1.5 / (h * nu)) ** (-m))


def vg_admissible(nu: float, h: float) -> tuple[bool, str]:
    """Return whether the α = 0 scheme is stable for ``(ν, h)`` and the condition used."""
    if nu >= 1:
        return True, "nu>=1 unconditional"
    bound = 3.0 / (2.0 * (1.0 - nu))
    if h < bound:
        return True, f"nu<1 requires h<{bound:.6g}"
    return False, f"nu={nu:g}<1 requires h<{bound:.6g}, got h={h:g}"


# ──────────────────────────────────────────────────────────────────────────────
# Measurement
# ──────────────────────────────────────────────────────────────────────────────

def _dense_iteration(lhs: BandedMatrix, rhs: BandedMatrix) -> np.ndarray:
    return linalg.solve(lhs.to_dense(), rhs.to_dense())


def _power_iteration(lhs: BandedMatrix, rhs: BandedMatrix) -> tuple[float, bool]:
    v = 1.0 + np.linspace(0.0, 1.0, lhs.n)
    v /= np.linalg.norm(v)
    previous = np.inf
    for _ in range(POWER_ITER_MAX):
        w = band_lu_solve(lhs, band_matvec(rhs, v))
        radius = float(np.linalg.norm(w))
        if radius == 0.0:
            return 0.0, True
        if abs(radius - previous) <= POWER_ITER_RTOL * radius:
            return radius, True
        previous = radius
        v = w / radius
    return previous, False


def measure_spectral_radius(lhs: BandedMatrix, rhs: BandedMatrix) -> SpectralEstimate:
    """Largest ``|eigenvalue|`` of ``lhs⁻¹ rhs``.

    Pairs of triangular matrices with the same orientation have their
    eigenvalues on the diagonal ratio, which is returned exactly. Other pairs
    use power iteration and fall back to a dense eigenvalue solve for
    ``n <= 256``. A radius that cannot be established is reported with
    ``method="unknown"``.
    """
    n = lhs.n
    inf_norm = None
    if n <= DENSE_FALLBACK_MAX_N:
        inf_norm = float(np.abs(_dense_iteration(lhs, rhs)).sum(axis=1).max())

    same_orientation = (lhs.is_upper and rhs.is_upper) or (lhs.is_lower and rhs.is_lower)
    if same_orientation:
        ratios = rhs.diagonal(0) / lhs.diagonal(0)
        constant = bool(np.allclose(ratios, ratios[0], rtol=1e-14, atol=0.0))
        return SpectralEstimate(
            float(np.max(np.abs(ratios))), float(ratios[0]) if constant else None, "diagonal", True, inf_norm
        )

    radius, converged = _power_iteration(lhs, rhs)
    if converged:
        return SpectralEstimate(radius, None, "power", True, inf_norm)
    if n <= DENSE_FALLBACK_MAX_N:
        eig = linalg.eigvals(_dense_iteration(lhs, rhs))
        return SpectralEstimate(float(np.max(np.abs(eig))), None, "dense", True, inf_norm)
    _log.warning("Power iteration did not converge for n=%d; spectral radius unknown", n)
    return SpectralEstimate(float("nan"), None, "unknown", False, inf_norm)


def _verdict(estimate: SpectralEstimate) -> bool:
    return estimate.converged and estimate.radius <= 1.0 + STABILITY_TOL


# ──────────────────────────────────────────────────────────────────────────────
# Reports
# ──────────────────────────────────────────────────────────────────────────────

def assess_cn_stability(
    alpha: int,
    nu: float,
    lam: float,
    h: float,
    theta: float,
    n: int,
    *,
    sqrt_v: float = 1.0,
    side: JumpSide = JumpSide.POSITIVE,
) -> StabilityReport:
    """Measure the compensated Crank-Nicolson iteration at integer ``alpha <= -1``.

    The generator is ``√V𝒜⁻¹ - λν^αΓ(-α)``, whose eigenvalue is :func:`zeta_B`.
    """
    spec = OperatorSpec(side, int(-(1 + alpha)), nu, lam, n, h)
    cfg = SchemeConfig("cn11", theta, sqrt_v, compensated=True, delta_weight=1.0)
    stepper = PadeStepper.build(build_A_operator(spec), cfg, compensator(lam, nu, alpha))
    estimate = measure_spectral_radius(stepper.lhs, stepper.rhs)
    zeta = zeta_B(sqrt_v, lam, nu, alpha, h, side)
    stiffness = abs(zeta) * theta
    if stiffness > STIFFNESS_WARN_RATIO:
        _log.warning(
            "Stiff regime at alpha=%d, h=%g: |zeta|*theta=%.3g; Crank-Nicolson is only A-stable here",
            alpha, h, stiffness,
        )
    return StabilityReport(
        zeta, estimate.radius, _verdict(estimate),
        f"alpha={alpha} compensated cn11 ({estimate.method})", estimate.inf_norm, stiffness,
    )


def assess_vg_stability(nu: float, h: float, m: int, n: int, side: JumpSide = JumpSide.POSITIVE) -> StabilityReport:
    """Measure the integer-m α = 0 step ``(I ∓ D1/ν)^{-m}`` against the admissibility rule."""
    base = green_base(side, nu, n, h).scaled(1.0 / nu)
    lhs = BandedMatrix.identity(n)
    for _ in range(m):
        lhs = lhs @ base
    estimate = measure_spectral_radius(lhs, BandedMatrix.identity(n))
    admissible, condition = vg_admissible(nu, h)
    return StabilityReport(
        vg_eigenvalue(nu, h, m), estimate.radius, admissible and _verdict(estimate),
        condition, estimate.inf_norm,
    )
