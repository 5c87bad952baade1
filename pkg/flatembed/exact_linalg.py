"""Exact rational linear algebra.

All arithmetic runs on ``fractions.Fraction``; no floating point is ever
involved. Matrices are immutable ``MatrixQ`` values stored row-major.

Example:
    >>> from flatembed.exact_linalg import MatrixQ, determinant
    >>> determinant(MatrixQ.from_rows([[0, 1], [1, 0]]))
    Fraction(-1, 1)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

from .errors import (
    DimensionMismatchError,
    InvalidRationalError,
    NonSquareError,
    NotSymmetricError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Vector = Tuple[Fraction, ...]
RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, a Fraction or a "p/q" string to a reduced Fraction.

    Floats are refused: they would silently lose exactness.

    Raises:
        InvalidRationalError: If the value is not an exact rational
    """
    if isinstance(value, bool):
        raise InvalidRationalError(f"Boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InvalidRationalError(f"Decimal notation is not exact: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidRationalError(f"Cannot parse rational {value!r}: {e}") from e
    raise InvalidRationalError(f"Unsupported rational value: {value!r}")


def to_vector(values: Iterable[RationalLike]) -> Vector:
    """Convert an iterable of rational-like values to a rational vector."""
    return tuple(to_rational(v) for v in values)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" (or "n" for integers)."""
    return str(value)


@dataclass(frozen=True)
class MatrixQ:
    """Immutable exact matrix over the rationals.

    Args:
        rows: Number of rows
        cols: Number of columns
        entries: Row-major entries, length ``rows * cols``
    """

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(
                f"Negative matrix shape {self.rows}x{self.cols}"
            )
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", to_vector(self.entries))

    # Constructors

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[RationalLike]], cols: int = -1
    ) -> "MatrixQ":
        """Build a matrix from a list of rows.

        Args:
            rows: Row lists (all of equal length)
            cols: Column count, only needed when ``rows`` is empty
        """
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else max(cols, 0)
        for row in rows:
            if len(row) != n_cols:
                raise DimensionMismatchError("Every row must have the same length")
        entries = tuple(to_rational(x) for row in rows for x in row)
        return cls(n_rows, n_cols, entries)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[RationalLike]], rows: int = -1
    ) -> "MatrixQ":
        """Build a matrix whose j-th column is ``columns[j]``."""
        n_cols = len(columns)
        n_rows = len(columns[0]) if n_cols else max(rows, 0)
        for column in columns:
            if len(column) != n_rows:
                raise DimensionMismatchError(
                    "Every column must have the same length"
                )
        entries = tuple(
            to_rational(columns[j][i]) for i in range(n_rows) for j in range(n_cols)
        )
        return cls(n_rows, n_cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "MatrixQ":
        n = len(values)
        entries = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = to_rational(v)
        return cls(n, n, tuple(entries))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["MatrixQ"]) -> "MatrixQ":
        """Place square or rectangular blocks along the diagonal."""
        n_rows = sum(b.rows for b in blocks)
        n_cols = sum(b.cols for b in blocks)
        grid = [[Fraction(0)] * n_cols for _ in range(n_rows)]
        r0 = c0 = 0
        for block in blocks:
            for i in range(block.rows):
                for j in range(block.cols):
                    grid[r0 + i][c0 + j] = block[i, j]
            r0 += block.rows
            c0 += block.cols
        return cls.from_rows(grid, cols=n_cols)

    # Access

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"Entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        return all(
            self[i, j] == self[j, i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    # Arithmetic

    def transpose(self) -> "MatrixQ":
        return MatrixQ.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        self._require_same_shape(other)
        return MatrixQ(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        self._require_same_shape(other)
        return MatrixQ(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "MatrixQ":
        return MatrixQ(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, factor: RationalLike) -> "MatrixQ":
        c = to_rational(factor)
        return MatrixQ(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        other_cols = other.columns()
        grid = [
            [_dot(self.row(i), col) for col in other_cols] for i in range(self.rows)
        ]
        return MatrixQ.from_rows(grid, cols=other.cols)

    def apply(self, vector: Sequence[RationalLike]) -> Vector:
        """Multiply the matrix by a column vector."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} does not fit {self.rows}x{self.cols}"
            )
        v = to_vector(vector)
        return tuple(_dot(self.row(i), v) for i in range(self.rows))

    def hstack(self, other: "MatrixQ") -> "MatrixQ":
        """Concatenate columns of ``other`` to the right of this matrix."""
        if self.rows != other.rows:
            raise DimensionMismatchError("Row counts differ in hstack")
        return MatrixQ.from_columns(self.columns() + other.columns(), self.rows)

    def _require_same_shape(self, other: "MatrixQ") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"Shapes differ: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


LinearMapQ = MatrixQ


class RankKernel(NamedTuple):
    """Rank of a matrix together with a basis of its kernel."""

    rank: int
    kernel_basis: List[Vector]


@dataclass(frozen=True)
class CongruenceResult:
    """Outcome of symmetric congruence diagonalization.

    ``change_of_basis`` is an invertible P with ``P^T Q P`` equal to the
    diagonal matrix built from ``diagonal``.
    """

    diagonal: Tuple[Fraction, ...]
    change_of_basis: MatrixQ
    positives: int
    negatives: int
    zeros: int

    @property
    def dimension(self) -> int:
        return len(self.diagonal)

    def diagonal_matrix(self) -> MatrixQ:
        return MatrixQ.diagonal(self.diagonal)


def _row_echelon(m: MatrixQ) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns the grid and pivot columns."""
    grid = m.to_rows()
    pivots: List[int] = []
    pivot_row = 0
    for col in range(m.cols):
        if pivot_row >= m.rows:
            break
        found = next(
            (r for r in range(pivot_row, m.rows) if grid[r][col] != 0), None
        )
        if found is None:
            continue
        grid[pivot_row], grid[found] = grid[found], grid[pivot_row]
        lead = grid[pivot_row][col]
        grid[pivot_row] = [x / lead for x in grid[pivot_row]]
        for r in range(m.rows):
            if r != pivot_row and grid[r][col] != 0:
                factor = grid[r][col]
                grid[r] = [a - factor * b for a, b in zip(grid[r], grid[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return grid, pivots


def rank_kernel(m: MatrixQ) -> RankKernel:
    """Rank and a kernel basis of ``m`` by exact Gauss-Jordan elimination.

    The kernel basis has one vector per free column, so
    ``rank + len(kernel_basis) == m.cols``.
    """
    grid, pivots = _row_echelon(m)
    free = [c for c in range(m.cols) if c not in pivots]
    kernel: List[Vector] = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -grid[r][f]
        kernel.append(tuple(v))
    logger.debug(f"rank_kernel: {m.rows}x{m.cols} has rank {len(pivots)}")
    return RankKernel(len(pivots), kernel)


def rank(m: MatrixQ) -> int:
    """Rank of ``m``."""
    return rank_kernel(m).rank


def determinant(m: MatrixQ) -> Fraction:
    """Exact determinant by rational Gaussian elimination.

    Raises:
        NonSquareError: If ``m`` is not square
    """
    if not m.is_square:
        raise NonSquareError(
            f"Determinant needs a square matrix, got {m.rows}x{m.cols}"
        )
    n = m.rows
    grid = m.to_rows()
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if grid[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            grid[col], grid[pivot] = grid[pivot], grid[col]
            det = -det
        lead = grid[col][col]
        det *= lead
        for r in range(col + 1, n):
            if grid[r][col] != 0:
                factor = grid[r][col] / lead
                grid[r] = [a - factor * b for a, b in zip(grid[r], grid[col])]
    return det


def inverse(m: MatrixQ) -> MatrixQ:
    """Exact inverse via Gauss-Jordan on ``[m | I]``.

    Raises:
        NonSquareError: If ``m`` is not square
        SingularMatrixError: If ``m`` is not invertible
    """
    if not m.is_square:
        raise NonSquareError(f"Inverse needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    augmented = m.hstack(MatrixQ.identity(n))
    grid, pivots = _row_echelon(augmented)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("Matrix is singular")
    return MatrixQ.from_rows([row[n:] for row in grid], cols=n)


def congruence_diagonalize(q: MatrixQ) -> CongruenceResult:
    """Diagonalize a symmetric matrix by congruence, exactly.

    Performs symmetric Gaussian elimination, tracking the basis change P so
    that ``P^T q P`` is diagonal. A zero pivot ``q_ii`` with some
    ``q_ij != 0`` is repaired by the basis change ``e_i <- e_i + c e_j``
    (c = 1, or c = -1 when that would cancel) before eliminating.

    Raises:
        NotSymmetricError: If ``q`` is not symmetric
    """
    if not q.is_symmetric:
        raise NotSymmetricError("Congruence diagonalization needs a symmetric matrix")
    n = q.rows
    a = q.to_rows()
    p = MatrixQ.identity(n).to_rows()

    def add_multiple(target: int, source: int, c: Fraction) -> None:
        # e_target <- e_target + c * e_source, applied as columns then rows
        for r in range(n):
            a[r][target] += c * a[r][source]
        for col in range(n):
            a[target][col] += c * a[source][col]
        for r in range(n):
            p[r][target] += c * p[r][source]

    for i in range(n):
        if a[i][i] == 0:
            partner = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
            if partner is None:
                continue
            c = Fraction(1)
            if 2 * a[i][partner] + a[partner][partner] == 0:
                c = Fraction(-1)
            add_multiple(i, partner, c)
        pivot = a[i][i]
        for j in range(i + 1, n):
            if a[j][i] != 0:
                add_multiple(j, i, -a[j][i] / pivot)

    diagonal = tuple(a[i][i] for i in range(n))
    positives = sum(1 for d in diagonal if d > 0)
    negatives = sum(1 for d in diagonal if d < 0)
    result = CongruenceResult(
        diagonal=diagonal,
        change_of_basis=MatrixQ.from_rows(p, cols=n),
        positives=positives,
        negatives=negatives,
        zeros=n - positives - negatives,
    )
    logger.debug(
        f"congruence_diagonalize: n={n} (+{positives}, -{negatives}, 0x{result.zeros})"
    )
    return result
