"""Banded matrices stored by diagonals, with products and banded solves.

Storage follows LAPACK's diagonal-ordered layout (the one
:func:`scipy.linalg.solve_banded` takes): ``ab[upper_bw + i - j, j] == a[i, j]``,
so each row of ``ab`` is one diagonal aligned by column.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from scipy.linalg import LinAlgError, solve_banded

from ppide.utils.exceptions import BandedError, DimensionError, SingularMatrixError
from ppide.utils.logger import get_logger

_log = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class BandedMatrix:
    """Real ``n × n`` matrix with ``lower_bw`` sub- and ``upper_bw`` super-diagonals."""

    n: int
    lower_bw: int
    upper_bw: int
    ab: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BandedError(f"dimension n={self.n} must be positive")
        if not (0 <= self.lower_bw < self.n and 0 <= self.upper_bw < self.n):
            raise BandedError(
                f"bandwidths ({self.lower_bw}, {self.upper_bw}) must lie in [0, {self.n - 1}]"
            )
        ab = np.array(self.ab, dtype=float)
        expected = (self.lower_bw + self.upper_bw + 1, self.n)
        if ab.shape != expected:
            raise BandedError(f"band storage shape {ab.shape} != {expected}")
        ab.setflags(write=False)
        object.__setattr__(self, "ab", ab)

    # ── constructors ─────────────────────────────────────────────────────────

    @classmethod
    def from_diagonals(cls, n: int, diagonals: Mapping[int, float | npt.ArrayLike]) -> BandedMatrix:
        """Build from ``{offset: values}``; ``values`` is a scalar or has ``n - |offset|`` entries.

        Offsets at or beyond ``n`` in magnitude are dropped.
        """
        kept = {k: v for k, v in diagonals.items() if abs(k) < n}
        lower = max([-k for k in kept if k < 0], default=0)
        upper = max([k for k in kept if k > 0], default=0)
        ab = np.zeros((lower + upper + 1, n))
        for k, values in kept.items():
            lo, hi = max(0, k), n + min(0, k)
            ab[upper - k, lo:hi] = np.broadcast_to(np.asarray(values, dtype=float), (hi - lo,))
        return cls(n, lower, upper, ab)

    @classmethod
    def identity(cls, n: int) -> BandedMatrix:
        return cls(n, 0, 0, np.ones((1, n)))

    @classmethod
    def from_dense(cls, dense: npt.ArrayLike, lower_bw: int, upper_bw: int) -> BandedMatrix:
        """Copy the band of a square dense matrix; entries outside it are ignored."""
        a = np.asarray(dense, dtype=float)
        n = a.shape[0]
        return cls.from_diagonals(
            n, {k: np.diagonal(a, offset=k).copy() for k in range(-lower_bw, upper_bw + 1)}
        )

    # ── accessors ────────────────────────────────────────────────────────────

    def diagonal(self, k: int = 0) -> np.ndarray:
        """Entries ``a[i, i + k]`` in increasing ``i``; zeros outside the band."""
        if abs(k) >= self.n:
            raise BandedError(f"offset {k} outside a {self.n}×{self.n} matrix")
        lo, hi = max(0, k), self.n + min(0, k)
        if -self.lower_bw <= k <= self.upper_bw:
            return self.ab[self.upper_bw - k, lo:hi].copy()
        return np.zeros(hi - lo)

    @property
    def is_upper(self) -> bool:
        return self.lower_bw == 0

    @property
    def is_lower(self) -> bool:
        return self.upper_bw == 0

    @property
    def n_diagonals(self) -> int:
        return self.lower_bw + self.upper_bw + 1

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        for k in range(-self.lower_bw, self.upper_bw + 1):
            idx = np.arange(max(0, -k), self.n - max(0, k))
            out[idx, idx + k] = self.diagonal(k)
        return out

    def reversed(self) -> BandedMatrix:
        """Return ``J A J`` with ``J`` the index reversal; swaps the bandwidths."""
        return BandedMatrix(self.n, self.upper_bw, self.lower_bw, self.ab[::-1, ::-1].copy())

    def widened(self, lower_bw: int, upper_bw: int) -> BandedMatrix:
        """Same matrix stored with (at least) the given bandwidths."""
        lower_bw, upper_bw = max(lower_bw, self.lower_bw), max(upper_bw, self.upper_bw)
        ab = np.zeros((lower_bw + upper_bw + 1, self.n))
        shift = upper_bw - self.upper_bw
        ab[shift:shift + self.n_diagonals] = self.ab
        return BandedMatrix(self.n, lower_bw, upper_bw, ab)

    # ── algebra ──────────────────────────────────────────────────────────────

    def __add__(self, other: BandedMatrix) -> BandedMatrix:
        _check_dim(self.n, other.n)
        lower, upper = max(self.lower_bw, other.lower_bw), max(self.upper_bw, other.upper_bw)
        a, b = self.widened(lower, upper), other.widened(lower, upper)
        return BandedMatrix(self.n, lower, upper, a.ab + b.ab)

    def __sub__(self, other: BandedMatrix) -> BandedMatrix:
        return self + other.scaled(-1.0)

    def scaled(self, c: float) -> BandedMatrix:
        return BandedMatrix(self.n, self.lower_bw, self.upper_bw, c * self.ab)

    def shifted(self, c: float) -> BandedMatrix:
        """Return ``A + c·I``."""
        return self + BandedMatrix.identity(self.n).scaled(c)

    def __matmul__(self, other: BandedMatrix | np.ndarray) -> BandedMatrix | np.ndarray:
        if isinstance(other, BandedMatrix):
            return band_mul(self, other)
        return band_matvec(self, other)


def _check_dim(expected: int, got: int) -> None:
    if expected != got:
        raise DimensionError(expected, got)


# ──────────────────────────────────────────────────────────────────────────────
# Products
# ──────────────────────────────────────────────────────────────────────────────

def band_matvec(a: BandedMatrix, v: npt.ArrayLike) -> np.ndarray:
    """Return ``a @ v`` in ``O(n·(P+Q+1))`` work; *v* may carry extra columns."""
    v = np.asarray(v, dtype=float)
    _check_dim(a.n, v.shape[0])
    n = a.n
    out = np.zeros_like(v)
    col = (slice(None),) + (None,) * (v.ndim - 1)
    for r in range(a.n_diagonals):
        k = a.upper_bw - r
        if k >= 0:
            out[: n - k] += a.ab[r, k:][col] * v[k:]
        else:
            out[-k:] += a.ab[r, : n + k][col] * v[: n + k]
    return out


def band_mul(a: BandedMatrix, b: BandedMatrix) -> BandedMatrix:
    """Return the banded product ``a @ b``.

    The result has ``lower_bw = a.lower_bw + b.lower_bw`` and
    ``upper_bw = a.upper_bw + b.upper_bw``, each clamped at ``n - 1``.
    """
    _check_dim(a.n, b.n)
    n = a.n
    lower = min(a.lower_bw + b.lower_bw, n - 1)
    upper = min(a.upper_bw + b.upper_bw, n - 1)
    ab = np.zeros((lower + upper + 1, n))
    for ka in range(-a.lower_bw, a.upper_bw + 1):
        row_a = a.ab[a.upper_bw - ka]
        for kb in range(-b.lower_bw, b.upper_bw + 1):
            k = ka + kb
            if not -lower <= k <= upper:
                continue
            lo, hi = max(0, kb, k), min(n, n + kb, n + k)
            if lo >= hi:
                continue
            ab[upper - k, lo:hi] += row_a[lo - kb:hi - kb] * b.ab[b.upper_bw - kb, lo:hi]
    return BandedMatrix(n, lower, upper, ab)


def band_power(a: BandedMatrix, exponent: int) -> BandedMatrix:
    """Return ``a`` raised to a nonnegative integer power by repeated :func:`band_mul`."""
    if exponent < 0:
        raise BandedError(f"negative power {exponent}")
    out = BandedMatrix.identity(a.n)
    for _ in range(exponent):
        out = band_mul(out, a)
    return out


# ──────────────────────────────────────────────────────────────────────────────
# Solves
# ──────────────────────────────────────────────────────────────────────────────

def band_lu_solve(a: BandedMatrix, rhs: npt.ArrayLike) -> np.ndarray:
    """Solve ``a @ x = rhs`` by banded LU.

    Triangular systems are handed to LAPACK in upper-triangular orientation
    (lower ones are index-reversed first) so no row interchange can occur and
    the pivots are exactly the diagonal. Other systems use partial pivoting.

    Raises:
        DimensionError: If ``rhs`` does not have ``a.n`` rows.
        SingularMatrixError: On a zero pivot.
    """
    b = np.asarray(rhs, dtype=float)
    _check_dim(a.n, b.shape[0])

    if a.is_upper or a.is_lower:
        diag = a.diagonal(0)
        zero = np.flatnonzero(diag == 0.0)
        if zero.size:
            raise SingularMatrixError(int(zero[0]))
        if a.is_lower and a.lower_bw:
            flipped = a.reversed()
            return solve_banded((0, flipped.upper_bw), flipped.ab, b[::-1], check_finite=False)[::-1]
        if a.upper_bw == 0:
            col = (slice(None),) + (None,) * (b.ndim - 1)
            return b / diag[col]
        return solve_banded((0, a.upper_bw), a.ab, b, check_finite=False)

    try:
        return solve_banded((a.lower_bw, a.upper_bw), a.ab, b, check_finite=False)
    except LinAlgError as exc:
        _log.debug("General banded solve failed (n=%d, P=%d, Q=%d)", a.n, a.lower_bw, a.upper_bw, exc_info=True)
        raise SingularMatrixError() from exc
