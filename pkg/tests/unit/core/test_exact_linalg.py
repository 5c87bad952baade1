"""Tests for exact rational linear algebra."""

import random
from fractions import Fraction

import pytest

from flatembed.errors import (
    DimensionMismatchError,
    InvalidRationalError,
    NonSquareError,
    NotSymmetricError,
    SingularMatrixError,
)
from flatembed.exact_linalg import (
    MatrixQ,
    congruence_diagonalize,
    determinant,
    inverse,
    rank,
    rank_kernel,
    to_rational,
)


def _random_matrix(rng: random.Random, rows: int, cols: int) -> MatrixQ:
    return MatrixQ.from_rows(
        [
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


class TestToRational:
    """Parsing of exact rational inputs."""

    def test_accepts_int_fraction_and_string(self):
        assert to_rational(3) == Fraction(3)
        assert to_rational(Fraction(2, 4)) == Fraction(1, 2)
        assert to_rational("3/4") == Fraction(3, 4)
        assert to_rational(" -2 ") == Fraction(-2)

    @pytest.mark.parametrize("value", [0.5, "0.5", "1e3", True, "x/2", "1/0", None])
    def test_rejects_inexact_or_malformed(self, value):
        with pytest.raises(InvalidRationalError):
            to_rational(value)


class TestMatrixQ:
    """Construction and arithmetic of MatrixQ."""

    def test_from_rows_and_columns_agree(self):
        by_rows = MatrixQ.from_rows([[1, 2], [3, 4]])
        by_columns = MatrixQ.from_columns([[1, 3], [2, 4]])
        assert by_rows == by_columns
        assert by_rows[1, 0] == 3

    def test_ragged_rows_rejected(self):
        with pytest.raises(DimensionMismatchError):
            MatrixQ.from_rows([[1, 2], [3]])

    def test_empty_matrix_keeps_column_count(self):
        empty = MatrixQ.from_rows([], cols=3)
        assert (empty.rows, empty.cols) == (0, 3)

    def test_product_with_identity(self, rng):
        a = _random_matrix(rng, 3, 4)
        assert a @ MatrixQ.identity(4) == a
        assert MatrixQ.identity(3) @ a == a

    def test_product_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            MatrixQ.identity(2) @ MatrixQ.identity(3)

    def test_transpose_and_symmetry(self):
        a = MatrixQ.from_rows([[1, 2], [2, 5]])
        assert a.is_symmetric
        assert a.transpose() == a
        assert not MatrixQ.from_rows([[1, 2], [3, 5]]).is_symmetric

    def test_block_diagonal(self):
        b = MatrixQ.block_diagonal(
            [MatrixQ.identity(1), MatrixQ.from_rows([[2, 3], [4, 5]])]
        )
        assert b.to_rows() == [[1, 0, 0], [0, 2, 3], [0, 4, 5]]

    def test_apply(self):
        a = MatrixQ.from_rows([[1, "1/2"], [0, 2]])
        assert a.apply([2, 2]) == (Fraction(3), Fraction(4))


class TestRankKernel:
    """Gauss-Jordan rank and kernel."""

    def test_rank_nullity(self, rng):
        for _ in range(20):
            a = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
            result = rank_kernel(a)
            assert result.rank + len(result.kernel_basis) == a.cols
            for v in result.kernel_basis:
                assert all(x == 0 for x in a.apply(v))

    def test_rank_of_dependent_rows(self):
        assert rank(MatrixQ.from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]])) == 2

    def test_rank_of_zero_and_empty(self):
        assert rank(MatrixQ.zeros(3, 3)) == 0
        assert rank(MatrixQ.from_rows([], cols=2)) == 0


class TestDeterminantInverse:
    """Determinant and inverse."""

    def test_hyperbolic_determinant(self):
        assert determinant(MatrixQ.from_rows([[0, 1], [1, 0]])) == -1

    def test_determinant_is_multiplicative(self, rng):
        for _ in range(10):
            a, b = _random_matrix(rng, 3, 3), _random_matrix(rng, 3, 3)
            assert determinant(a @ b) == determinant(a) * determinant(b)

    def test_determinant_non_square(self):
        with pytest.raises(NonSquareError):
            determinant(MatrixQ.zeros(2, 3))

    def test_inverse_round_trip(self):
        a = MatrixQ.from_rows([[2, 1], [1, 1]])
        assert a @ inverse(a) == MatrixQ.identity(2)

    def test_inverse_singular(self):
        with pytest.raises(SingularMatrixError):
            inverse(MatrixQ.from_rows([[1, 2], [2, 4]]))


class TestCongruenceDiagonalize:
    """Symmetric diagonalization P^T Q P = D."""

    @pytest.mark.parametrize(
        "rows, expected",
        [
            ([[0, 1], [1, 0]], (1, 1, 0)),
            ([[1, 0, 0], [0, 1, 0], [0, 0, -1]], (2, 1, 0)),
            ([[2, -1], [-1, 2]], (2, 0, 0)),
            ([[1, 1], [1, 1]], (1, 0, 1)),
        ],
    )
    def test_inertia(self, rows, expected):
        result = congruence_diagonalize(MatrixQ.from_rows(rows))
        assert (result.positives, result.negatives, result.zeros) == expected

    def test_change_of_basis_diagonalizes(self, rng):
        for _ in range(20):
            n = rng.randint(1, 5)
            a = _random_matrix(rng, n, n)
            q = a + a.transpose()
            result = congruence_diagonalize(q)
            p = result.change_of_basis
            assert determinant(p) != 0
            assert p.transpose() @ q @ p == result.diagonal_matrix()

    def test_zero_pivot_with_cancelling_partner(self):
        # 2 q_01 + q_11 = 0 forces the c = -1 repair
        q = MatrixQ.from_rows([[0, 1], [1, -2]])
        result = congruence_diagonalize(q)
        p = result.change_of_basis
        assert p.transpose() @ q @ p == result.diagonal_matrix()
        assert (result.positives, result.negatives) == (1, 1)

    def test_rejects_non_symmetric(self):
        with pytest.raises(NotSymmetricError):
            congruence_diagonalize(MatrixQ.from_rows([[1, 2], [0, 1]]))
