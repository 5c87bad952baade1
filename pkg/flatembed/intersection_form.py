"""Integral symmetric bilinear forms and closed simply-connected 4-manifolds.

Indefinite unimodular forms are classified by rank, signature and parity:
odd forms are a<+1> + b<-1>, even forms are (sigma/8) E8 + ((rk - |sigma|)/2) H.
Together with the Kirby-Siebenmann invariant KS in Z/2 this pins down the
homeomorphism type, which is what the recipes and doubles below work with.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    EmptyDecompositionError,
    FlatEmbedError,
    InconsistentInvariantsError,
    InvalidDecompositionError,
    KsNotApplicableError,
    NonSquareError,
    NotIndefiniteError,
    NotSymmetricError,
    NotUnimodularError,
    OddRankError,
)
from .exact_linalg import MatrixQ, congruence_diagonalize, determinant

logger = logging.getLogger(__name__)

# E8 Dynkin diagram: a chain 0-6 with node 7 attached to node 4
E8_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7))

DOUBLE_TARGET = "S²×̃S³"
SMOOTHING_NOTE = (
    "at most one of the two homeomorphism types with this form is smoothable"
)


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class IntegralSymmetricForm:
    """A symmetric bilinear form over Z, given by its Gram matrix."""

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.matrix)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise NonSquareError("Intersection form matrix must be square")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise DimensionMismatchError(f"Entries must be integers, got {x!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise NotSymmetricError(f"Entries ({i},{j}) and ({j},{i}) differ")
        object.__setattr__(self, "matrix", rows)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def to_matrix(self) -> MatrixQ:
        return MatrixQ.from_rows(self.matrix, cols=self.rank)

    def pair(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(
            a[i] * self.matrix[i][j] * b[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    @classmethod
    def empty(cls) -> "IntegralSymmetricForm":
        return cls(())

    @classmethod
    def diagonal(cls, entries: Iterable[int]) -> "IntegralSymmetricForm":
        values = list(entries)
        n = len(values)
        return cls(
            tuple(
                tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)
            )
        )

    @classmethod
    def hyperbolic(cls) -> "IntegralSymmetricForm":
        return cls(((0, 1), (1, 0)))

    @classmethod
    def e8(cls) -> "IntegralSymmetricForm":
        return e8_form()


@lru_cache(maxsize=None)
def e8_form() -> IntegralSymmetricForm:
    """Gram matrix of E8, checked to be even, unimodular, rank 8 and signature 8."""
    grid = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in E8_EDGES:
        grid[i][j] = grid[j][i] = -1
    form = IntegralSymmetricForm(tuple(tuple(row) for row in grid))
    inv = invariants(form)
    if (inv.rank, inv.signature, inv.parity, inv.determinant) != (8, 8, Parity.EVEN, 1):
        raise RuntimeError(f"E8 Gram matrix failed validation: {inv}")
    return form


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    b_plus: int
    b_minus: int
    signature: int
    parity: Parity
    determinant: int
    unimodular: bool
    indefinite: bool

    @property
    def zeros(self) -> int:
        return self.rank - self.b_plus - self.b_minus


def invariants(Q: IntegralSymmetricForm) -> FormInvariants:
    """Rank, b+, b-, signature, parity and determinant of Q.

    b+ and b- come from exact congruence diagonalization over Q. Q is even
    iff every diagonal entry is even.
    """
    matrix = Q.to_matrix()
    diag = congruence_diagonalize(matrix)
    det = determinant(matrix)
    even = all(Q.matrix[i][i] % 2 == 0 for i in range(Q.rank))
    parity = Parity.EVEN if even else Parity.ODD
    return FormInvariants(
        rank=Q.rank,
        b_plus=diag.positives,
        b_minus=diag.negatives,
        signature=diag.positives - diag.negatives,
        parity=parity,
        determinant=int(det),
        unimodular=det in (1, -1),
        indefinite=diag.positives > 0 and diag.negatives > 0,
    )


def direct_sum(
    Q1: IntegralSymmetricForm, Q2: IntegralSymmetricForm
) -> IntegralSymmetricForm:
    """Block-diagonal sum; the form of a connected sum."""
    n1, n2 = Q1.rank, Q2.rank
    rows = [tuple(row) + (0,) * n2 for row in Q1.matrix]
    rows += [(0,) * n1 + tuple(row) for row in Q2.matrix]
    return IntegralSymmetricForm(tuple(rows))


def negate(Q: IntegralSymmetricForm) -> IntegralSymmetricForm:
    """The form of the orientation-reversed manifold."""
    return IntegralSymmetricForm(tuple(tuple(-x for x in row) for row in Q.matrix))


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Normal form of an indefinite unimodular form.

    Odd forms use ``plus_count`` <+1> and ``minus_count`` <-1> summands.
    Even forms use ``e8_count`` copies of E8 (negative for -E8) and
    ``h_count`` copies of H.
    """

    parity: Parity
    plus_count: int = 0
    minus_count: int = 0
    e8_count: int = 0
    h_count: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "parity", Parity(self.parity))
        if min(self.plus_count, self.minus_count, self.h_count) < 0:
            raise InvalidDecompositionError(
                f"Summand counts must be non-negative: {self.plus_count}, "
                f"{self.minus_count}, {self.h_count}"
            )
        unused = (
            (self.e8_count, self.h_count)
            if self.parity is Parity.ODD
            else (self.plus_count, self.minus_count)
        )
        if any(unused):
            raise InvalidDecompositionError(
                f"{self.parity.value} decomposition with counts of the other parity"
            )

    @property
    def rank(self) -> int:
        if self.parity is Parity.ODD:
            return self.plus_count + self.minus_count
        return 8 * abs(self.e8_count) + 2 * self.h_count

    @property
    def signature(self) -> int:
        if self.parity is Parity.ODD:
            return self.plus_count - self.minus_count
        return 8 * self.e8_count

    def to_form(self) -> IntegralSymmetricForm:
        """Reconstruct the canonical Gram matrix."""
        if self.parity is Parity.ODD:
            return IntegralSymmetricForm.diagonal(
                [1] * self.plus_count + [-1] * self.minus_count
            )
        e8 = e8_form() if self.e8_count >= 0 else negate(e8_form())
        form = IntegralSymmetricForm.empty()
        for _ in range(abs(self.e8_count)):
            form = direct_sum(form, e8)
        for _ in range(self.h_count):
            form = direct_sum(form, IntegralSymmetricForm.hyperbolic())
        return form

    def describe(self) -> str:
        if self.parity is Parity.ODD:
            return f"{self.plus_count}⟨+1⟩ ⊕ {self.minus_count}⟨−1⟩"
        if self.e8_count >= 0:
            e8 = f"{self.e8_count}·E₈"
        else:
            e8 = f"{-self.e8_count}·(−E₈)"
        return f"{e8} ⊕ {self.h_count}·H"


def decomposition_from_invariants(inv: FormInvariants) -> CanonicalDecomposition:
    """Normal form determined by the invariants of an indefinite unimodular form.

    Raises:
        NotUnimodularError: If the determinant is not +-1
        NotIndefiniteError: If b+ or b- is zero
        InconsistentInvariantsError: If an even form has sigma not divisible
            by 8 or rk - |sigma| odd
    """
    if not inv.unimodular:
        raise NotUnimodularError(f"Determinant {inv.determinant} is not ±1")
    if not inv.indefinite:
        raise NotIndefiniteError(
            f"Form with b+={inv.b_plus}, b-={inv.b_minus} is not indefinite"
        )
    if inv.parity is Parity.ODD:
        return CanonicalDecomposition(Parity.ODD, inv.b_plus, inv.b_minus)
    if inv.signature % 8:
        raise InconsistentInvariantsError(
            f"Even unimodular form with signature {inv.signature} not divisible by 8"
        )
    if (inv.rank - abs(inv.signature)) % 2:
        raise InconsistentInvariantsError(
            f"rk - |sigma| = {inv.rank - abs(inv.signature)} is odd"
        )
    return CanonicalDecomposition(
        Parity.EVEN,
        e8_count=inv.signature // 8,
        h_count=(inv.rank - abs(inv.signature)) // 2,
    )


def classify_indefinite(Q: IntegralSymmetricForm) -> CanonicalDecomposition:
    """Classify an indefinite unimodular form up to isomorphism."""
    decomposition = decomposition_from_invariants(invariants(Q))
    logger.debug(f"classify_indefinite: rank {Q.rank} -> {decomposition.describe()}")
    return decomposition


def is_isomorphic_indefinite(
    Q1: IntegralSymmetricForm, Q2: IntegralSymmetricForm
) -> bool:
    """Isomorphism test for indefinite unimodular forms by (rank, sigma, parity).

    Raises:
        NotUnimodularError: If either form is not unimodular
        NotIndefiniteError: If either form is definite
    """
    return classify_indefinite(Q1) == classify_indefinite(Q2)


# Kirby-Siebenmann invariant


def _check_ks(value: int) -> int:
    if isinstance(value, bool) or value not in (0, 1):
        raise FlatEmbedError(f"KS values live in Z/2, got {value!r}")
    return value


def ks_sum(k1: int, k2: int) -> int:
    """KS of a connected sum."""
    return (_check_ks(k1) + _check_ks(k2)) % 2


def ks_fold(values: Iterable[int]) -> int:
    total = 0
    for value in values:
        total = ks_sum(total, value)
    return total


@dataclass(frozen=True)
class ManifoldClass:
    """Homeomorphism type of a closed simply-connected 4-manifold.

    For even forms ``ks`` is metadata of the unique manifold, never derived.
    """

    form: CanonicalDecomposition
    ks: Optional[int]

    @property
    def note(self) -> str:
        if self.form.parity is Parity.ODD:
            return SMOOTHING_NOTE
        return "unique up to homeomorphism"


@dataclass(frozen=True)
class Piece:
    name: str
    label: str
    form: IntegralSymmetricForm
    ks: int


def _pieces() -> Dict[str, Piece]:
    e8 = e8_form()
    return {
        "X1": Piece("X1", "X₁", IntegralSymmetricForm.diagonal([1]), 1),
        "X-1": Piece("X-1", "X₋₁", IntegralSymmetricForm.diagonal([-1]), 1),
        "CP2": Piece("CP2", "ℂP²", IntegralSymmetricForm.diagonal([1]), 0),
        "CP2bar": Piece("CP2bar", "ℂP²̄", IntegralSymmetricForm.diagonal([-1]), 0),
        "X_E8": Piece("X_E8", "X_{E₈}", e8, 1),
        "X_-E8": Piece("X_-E8", "X_{−E₈}", negate(e8), 1),
        "S2xS2": Piece("S2xS2", "S²×S²", IntegralSymmetricForm.hyperbolic(), 0),
    }


def universal_target_pieces() -> Tuple[Piece, ...]:
    """The seven building blocks every indefinite manifold is a connected sum of."""
    return tuple(_pieces().values())


def piece(name: str) -> Piece:
    pieces = _pieces()
    if name not in pieces:
        raise FlatEmbedError(f"Unknown piece {name!r}; expected one of {list(pieces)}")
    return pieces[name]


@dataclass(frozen=True)
class Recipe:
    """A connected sum, as (piece name, count) pairs with positive counts."""

    manifold: ManifoldClass
    summands: Tuple[Tuple[str, int], ...]

    def form(self) -> IntegralSymmetricForm:
        result = IntegralSymmetricForm.empty()
        for name, count in self.summands:
            for _ in range(count):
                result = direct_sum(result, piece(name).form)
        return result

    @property
    def ks(self) -> int:
        return ks_fold(
            piece(name).ks for name, count in self.summands for _ in range(count)
        )

    def describe(self) -> str:
        return " # ".join(
            f"{count}·{piece(name).label}" for name, count in self.summands
        )


def realize_recipe(dec: CanonicalDecomposition, ks: Optional[int] = None) -> Recipe:
    """Connected sum of standard pieces with the given form and KS.

    Odd forms take ks in {0, 1} (default 0); ks = 1 swaps one CP2 for X1.
    Even forms determine the manifold, so ks must be omitted.

    Raises:
        EmptyDecompositionError: If the decomposition has rank 0
        KsNotApplicableError: If ks is given for an even form
    """
    if dec.rank == 0:
        raise EmptyDecompositionError("Rank 0 has no connected-sum recipe")
    summands: List[Tuple[str, int]] = []
    if dec.parity is Parity.EVEN:
        if ks is not None:
            raise KsNotApplicableError("Even forms determine the manifold; drop ks")
        if dec.e8_count:
            name = "X_E8" if dec.e8_count > 0 else "X_-E8"
            summands.append((name, abs(dec.e8_count)))
        summands.append(("S2xS2", dec.h_count))
    else:
        ks = _check_ks(0 if ks is None else ks)
        a, b = dec.plus_count, dec.minus_count
        if ks == 0:
            summands += [("CP2", a), ("CP2bar", b)]
        elif a > 0:
            summands += [("X1", 1), ("CP2", a - 1), ("CP2bar", b)]
        else:
            summands += [("X-1", 1), ("CP2bar", b - 1)]
    recipe = Recipe(
        ManifoldClass(dec, ks),
        tuple((name, count) for name, count in summands if count > 0),
    )
    logger.debug(f"realize_recipe: {dec.describe()} ks={ks} -> {recipe.describe()}")
    return recipe


@dataclass(frozen=True)
class DoubleLabel:
    """Homeomorphism type of the double of a 4-manifold with given form."""

    parity: Parity
    rank: int
    label: str
    embeds_in: str = DOUBLE_TARGET


def double_class(parity: Parity, rank: int) -> DoubleLabel:
    """Label of the double DM of a manifold M whose boundary form has this rank.

    Raises:
        OddRankError: If rank is odd
    """
    parity = Parity(parity)
    if rank < 0:
        raise DimensionMismatchError(f"Rank must be non-negative, got {rank}")
    if rank % 2:
        raise OddRankError(f"Doubles have even rank, got {rank}")
    k = rank // 2
    if k == 0:
        label = "S⁴"
    elif parity is Parity.EVEN:
        label = f"#{k} S²×S²"
    elif k == 1:
        label = "S²×̃S²"
    else:
        label = f"#{k - 1} S²×S² # S²×̃S²"
    return DoubleLabel(parity, rank, label)
