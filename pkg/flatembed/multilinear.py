"""Skew-symmetric and symmetric q-multilinear functions on Q^m.

A form F is stored by its components ``F_{i_1...i_q} = F(e_{i_1}, ..., e_{i_q})``
on canonical index tuples: strictly increasing for skew forms, weakly
increasing for symmetric ones. Indices are 1-based. Absent components are 0.

Example:
    >>> from fractions import Fraction
    >>> from flatembed.multilinear import FormKind, MultilinearForm, evaluate
    >>> F = MultilinearForm(FormKind.SKEW, m=3, q=2, components={(1, 2): Fraction(1)})
    >>> evaluate(F, [(1, 2, 0), (0, 1, 1)])
    Fraction(1, 1)
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Sequence, Tuple

from .errors import (
    ArityMismatchError,
    DimensionMismatchError,
    IndexOutOfRangeError,
    NonCanonicalIndexError,
)
from .exact_linalg import (
    LinearMapQ,
    MatrixQ,
    RationalLike,
    Vector,
    determinant,
    to_rational,
    to_vector,
)

logger = logging.getLogger(__name__)

IndexTuple = Tuple[int, ...]


class FormKind(str, Enum):
    """Which dual space a form belongs to."""

    SKEW = "skew"
    SYMMETRIC = "symmetric"


def dim_space(kind: FormKind, m: int, q: int) -> int:
    """Dimension of the space of skew (C(m,q)) or symmetric (C(m+q-1,q)) q-forms."""
    if m < 1 or q < 0:
        raise DimensionMismatchError(
            f"dim_space needs m >= 1 and q >= 0, got m={m}, q={q}"
        )
    if kind is FormKind.SKEW:
        return math.comb(m, q)
    return math.comb(m + q - 1, q)


def canonical_tuples(kind: FormKind, m: int, q: int) -> Iterator[IndexTuple]:
    """Canonical index tuples in lexicographic order (the standard basis order)."""
    indices = range(1, m + 1)
    if kind is FormKind.SKEW:
        return itertools.combinations(indices, q)
    return itertools.combinations_with_replacement(indices, q)


def is_canonical(kind: FormKind, indices: Sequence[int]) -> bool:
    pairs = zip(indices, indices[1:])
    if kind is FormKind.SKEW:
        return all(a < b for a, b in pairs)
    return all(a <= b for a, b in pairs)


def _permutation_sign(indices: Sequence[int]) -> int:
    inversions = sum(
        1
        for i in range(len(indices))
        for j in range(i + 1, len(indices))
        if indices[i] > indices[j]
    )
    return -1 if inversions % 2 else 1


def canonicalize(
    kind: FormKind, indices: Sequence[int], m: int = 0
) -> Tuple[IndexTuple, Fraction]:
    """Reduce an index tuple to canonical order.

    For skew forms the coefficient is the sign of the sorting permutation, or
    0 when an index repeats. For symmetric forms the coefficient is 1.

    Args:
        kind: Skew or symmetric
        indices: 1-based indices
        m: If positive, indices must lie in 1..m

    Raises:
        IndexOutOfRangeError: If an index is outside 1..m
    """
    for i in indices:
        if i < 1 or (m > 0 and i > m):
            raise IndexOutOfRangeError(f"Index {i} outside 1..{m if m > 0 else 'm'}")
    ordered = tuple(sorted(indices))
    if kind is FormKind.SYMMETRIC:
        return ordered, Fraction(1)
    if len(set(ordered)) != len(ordered):
        return ordered, Fraction(0)
    return ordered, Fraction(_permutation_sign(indices))


def multiply_basis(
    kind: FormKind, left: Sequence[int], right: Sequence[int]
) -> Tuple[IndexTuple, Fraction]:
    """Exterior (or symmetric) product of two decomposable basis elements."""
    return canonicalize(kind, tuple(left) + tuple(right))


@dataclass(frozen=True)
class MultilinearForm:
    """A skew or symmetric q-multilinear function on Q^m, stored sparsely.

    Args:
        kind: FormKind.SKEW or FormKind.SYMMETRIC
        m: Dimension of the underlying space
        q: Arity
        components: Canonical index tuple -> value; zero values are dropped
    """

    kind: FormKind
    m: int
    q: int
    components: Mapping[IndexTuple, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", FormKind(self.kind))
        if self.m < 1 or self.q < 1:
            raise DimensionMismatchError(
                f"Forms need m >= 1 and q >= 1, got m={self.m}, q={self.q}"
            )
        cleaned: Dict[IndexTuple, Fraction] = {}
        for idx, value in self.components.items():
            idx = tuple(idx)
            if len(idx) != self.q:
                raise ArityMismatchError(f"Index {idx} does not have {self.q} entries")
            for i in idx:
                if not 1 <= i <= self.m:
                    raise IndexOutOfRangeError(f"Index {i} outside 1..{self.m}")
            if not is_canonical(self.kind, idx):
                raise NonCanonicalIndexError(
                    f"Index {idx} is not canonical for a {self.kind.value} form"
                )
            v = to_rational(value)
            if v != 0:
                cleaned[idx] = v
        object.__setattr__(
            self, "components", MappingProxyType(dict(sorted(cleaned.items())))
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultilinearForm):
            return NotImplemented
        return (self.kind, self.m, self.q, dict(self.components)) == (
            other.kind,
            other.m,
            other.q,
            dict(other.components),
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.m, self.q, tuple(self.components.items())))

    @classmethod
    def zero(cls, kind: FormKind, m: int, q: int) -> "MultilinearForm":
        return cls(kind, m, q, {})

    def component(self, indices: Sequence[int]) -> Fraction:
        """F(e_{i_1}, ..., e_{i_q}) for any (possibly non-canonical) tuple."""
        if len(indices) != self.q:
            raise ArityMismatchError(f"Expected {self.q} indices, got {len(indices)}")
        idx, coefficient = canonicalize(self.kind, indices, self.m)
        if coefficient == 0:
            return Fraction(0)
        return coefficient * self.components.get(idx, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.components

    @property
    def stored_count(self) -> int:
        return len(self.components)

    @property
    def is_dense(self) -> bool:
        return self.stored_count == dim_space(self.kind, self.m, self.q)

    def __call__(self, *args: Sequence[RationalLike]) -> Fraction:
        return evaluate(self, args)


def _check_arguments(
    F: MultilinearForm, args: Sequence[Sequence[RationalLike]]
) -> Tuple[Vector, ...]:
    if len(args) != F.q:
        raise ArityMismatchError(f"Form of arity {F.q} got {len(args)} arguments")
    vectors = tuple(to_vector(a) for a in args)
    for v in vectors:
        if len(v) != F.m:
            raise DimensionMismatchError(
                f"Argument of length {len(v)} for a form on Q^{F.m}"
            )
    return vectors


def evaluate(F: MultilinearForm, args: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Evaluate F on q vectors of Q^m.

    Skew forms sum ``F_I * det`` of the q x q minors picked out by each stored
    tuple I. Symmetric forms sum ``F_I`` times the sum, over the distinct
    rearrangements j of I, of ``prod_k x_k[j_k]``.

    Raises:
        ArityMismatchError: If the number of arguments is not q
        DimensionMismatchError: If an argument does not have length m
    """
    vectors = _check_arguments(F, args)
    total = Fraction(0)
    for idx, value in F.components.items():
        if F.kind is FormKind.SKEW:
            minor = MatrixQ.from_rows(
                [[vectors[k][i - 1] for i in idx] for k in range(F.q)]
            )
            total += value * determinant(minor)
        else:
            weight = Fraction(0)
            for arrangement in set(itertools.permutations(idx)):
                term = Fraction(1)
                for k, i in enumerate(arrangement):
                    term *= vectors[k][i - 1]
                    if term == 0:
                        break
                weight += term
            total += value * weight
    return total


def evaluate_bruteforce(
    F: MultilinearForm, args: Sequence[Sequence[RationalLike]]
) -> Fraction:
    """Evaluate F by full multilinear expansion over all m^q index functions.

    Independent of ``evaluate``; every basis value goes through
    ``canonicalize``.
    """
    vectors = _check_arguments(F, args)
    total = Fraction(0)
    for indices in itertools.product(range(1, F.m + 1), repeat=F.q):
        coefficient = Fraction(1)
        for k, i in enumerate(indices):
            coefficient *= vectors[k][i - 1]
            if coefficient == 0:
                break
        if coefficient != 0:
            total += coefficient * F.component(indices)
    return total


def pullback(tau: LinearMapQ, F: MultilinearForm) -> MultilinearForm:
    """The form ``(tau^* F)(x_1, ..., x_q) = F(tau x_1, ..., tau x_q)``.

    Raises:
        DimensionMismatchError: If tau is not m x m
    """
    if (tau.rows, tau.cols) != (F.m, F.m):
        raise DimensionMismatchError(
            f"Pullback needs a {F.m}x{F.m} map, got {tau.rows}x{tau.cols}"
        )
    images = tau.columns()
    components = {
        idx: evaluate(F, [images[i - 1] for i in idx])
        for idx in canonical_tuples(F.kind, F.m, F.q)
    }
    result = MultilinearForm(F.kind, F.m, F.q, components)
    logger.debug(
        f"pullback: {F.kind.value} m={F.m} q={F.q}, {result.stored_count} components"
    )
    return result
