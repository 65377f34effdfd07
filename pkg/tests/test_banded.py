"""Tests for ppide.core.banded — storage, algebra, products and banded solves."""

from __future__ import annotations

import numpy as np
import pytest

from ppide.core.banded import BandedMatrix, band_lu_solve, band_matvec, band_mul, band_power
from ppide.utils.exceptions import BandedError, DimensionError, SingularMatrixError


def _random_banded(rng: np.random.Generator, n: int, lower: int, upper: int) -> BandedMatrix:
    diags = {k: rng.uniform(-1.0, 1.0, n - abs(k)) for k in range(-lower, upper + 1)}
    diags[0] = diags[0] + 4.0 + lower + upper
    return BandedMatrix.from_diagonals(n, diags)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


# ---------------------------------------------------------------------------
# Construction & accessors
# ---------------------------------------------------------------------------

class TestConstruction:
    def test_from_diagonals_to_dense(self) -> None:
        a = BandedMatrix.from_diagonals(4, {0: 2.0, 1: [1.0, 2.0, 3.0], -2: 5.0})
        expected = np.array(
            [[2.0, 1.0, 0.0, 0.0], [0.0, 2.0, 2.0, 0.0], [5.0, 0.0, 2.0, 3.0], [0.0, 5.0, 0.0, 2.0]]
        )
        np.testing.assert_array_equal(a.to_dense(), expected)
        assert (a.lower_bw, a.upper_bw) == (2, 1)

    def test_layout_matches_lapack(self) -> None:
        a = BandedMatrix.from_diagonals(3, {0: 1.0, 1: [7.0, 8.0]})
        assert a.ab[0, 1] == 7.0  # ab[upper + i - j, j] with i=0, j=1

    def test_out_of_range_offsets_dropped(self) -> None:
        a = BandedMatrix.from_diagonals(3, {0: 1.0, 5: 9.0})
        assert a.upper_bw == 0

    def test_from_dense_roundtrip(self, rng) -> None:
        a = _random_banded(rng, 6, 2, 1)
        np.testing.assert_array_equal(BandedMatrix.from_dense(a.to_dense(), 2, 1).to_dense(), a.to_dense())

    def test_diagonal_outside_band_is_zero(self) -> None:
        a = BandedMatrix.identity(4)
        np.testing.assert_array_equal(a.diagonal(2), np.zeros(2))
        with pytest.raises(BandedError):
            a.diagonal(4)

    def test_bad_shape(self) -> None:
        with pytest.raises(BandedError):
            BandedMatrix(3, 0, 1, np.zeros((1, 3)))

    def test_bad_bandwidth(self) -> None:
        with pytest.raises(BandedError):
            BandedMatrix(3, 3, 0, np.zeros((4, 3)))

    def test_storage_is_read_only(self) -> None:
        a = BandedMatrix.identity(3)
        with pytest.raises(ValueError):
            a.ab[0, 0] = 2.0

    def test_orientation_flags(self) -> None:
        upper = BandedMatrix.from_diagonals(4, {0: 1.0, 2: 1.0})
        assert upper.is_upper and not upper.is_lower
        assert upper.reversed().is_lower


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------

class TestAlgebra:
    def test_add_sub_scale_shift(self, rng) -> None:
        a, b = _random_banded(rng, 7, 1, 2), _random_banded(rng, 7, 3, 0)
        da, db = a.to_dense(), b.to_dense()
        np.testing.assert_allclose((a + b).to_dense(), da + db)
        np.testing.assert_allclose((a - b).to_dense(), da - db)
        np.testing.assert_allclose(a.scaled(2.5).to_dense(), 2.5 * da)
        np.testing.assert_allclose(a.shifted(-1.0).to_dense(), da - np.eye(7))

    def test_reversed(self, rng) -> None:
        a = _random_banded(rng, 6, 2, 1)
        np.testing.assert_array_equal(a.reversed().to_dense(), a.to_dense()[::-1, ::-1])

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionError):
            BandedMatrix.identity(3) + BandedMatrix.identity(4)

    def test_band_mul(self, rng) -> None:
        a, b = _random_banded(rng, 8, 2, 1), _random_banded(rng, 8, 1, 3)
        c = band_mul(a, b)
        assert (c.lower_bw, c.upper_bw) == (3, 4)
        np.testing.assert_allclose(c.to_dense(), a.to_dense() @ b.to_dense(), atol=1e-12)

    def test_band_mul_clamps_bandwidth(self, rng) -> None:
        a = _random_banded(rng, 4, 3, 3)
        assert band_mul(a, a).upper_bw == 3
        np.testing.assert_allclose(band_mul(a, a).to_dense(), a.to_dense() @ a.to_dense(), atol=1e-12)

    def test_band_power(self, rng) -> None:
        a = _random_banded(rng, 9, 0, 2)
        np.testing.assert_allclose(
            band_power(a, 3).to_dense(), np.linalg.matrix_power(a.to_dense(), 3), rtol=1e-12, atol=1e-10
        )
        np.testing.assert_array_equal(band_power(a, 0).to_dense(), np.eye(9))
        with pytest.raises(BandedError):
            band_power(a, -1)

    def test_matvec_vector_and_matrix(self, rng) -> None:
        a = _random_banded(rng, 10, 2, 3)
        v = rng.normal(size=10)
        m = rng.normal(size=(10, 3))
        np.testing.assert_allclose(band_matvec(a, v), a.to_dense() @ v, atol=1e-12)
        np.testing.assert_allclose(a @ m, a.to_dense() @ m, atol=1e-12)

    def test_matvec_dimension(self) -> None:
        with pytest.raises(DimensionError):
            band_matvec(BandedMatrix.identity(3), np.ones(4))


# ---------------------------------------------------------------------------
# Solves
# ---------------------------------------------------------------------------

class TestBandLuSolve:
    @pytest.mark.parametrize(("lower", "upper"), [(0, 0), (0, 3), (2, 0), (2, 1)])
    def test_matches_dense_solve(self, rng, lower: int, upper: int) -> None:
        a = _random_banded(rng, 12, lower, upper)
        b = rng.normal(size=12)
        np.testing.assert_allclose(band_lu_solve(a, b), np.linalg.solve(a.to_dense(), b), rtol=1e-10, atol=1e-12)

    def test_multiple_rhs(self, rng) -> None:
        a = _random_banded(rng, 8, 2, 0)
        b = rng.normal(size=(8, 2))
        np.testing.assert_allclose(band_lu_solve(a, b), np.linalg.solve(a.to_dense(), b), atol=1e-12)

    def test_zero_pivot_names_row(self) -> None:
        a = BandedMatrix.from_diagonals(4, {0: [1.0, 1.0, 0.0, 1.0], 1: 1.0})
        with pytest.raises(SingularMatrixError) as info:
            band_lu_solve(a, np.ones(4))
        assert info.value.index == 2

    def test_singular_general(self) -> None:
        dense_singular = BandedMatrix.from_dense(np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 1.0]]), 1, 1)
        with pytest.raises(SingularMatrixError):
            band_lu_solve(dense_singular, np.ones(3))

    def test_rhs_dimension(self) -> None:
        with pytest.raises(DimensionError):
            band_lu_solve(BandedMatrix.identity(3), np.ones(2))
