"""Commutative graded algebras with Poincare duality built from a form.

Given a q-form F on V = Q^m (q = 2r + 1 odd, q >= 3) and a step p, the
algebra has non-zero grades only at degrees s*p for 0 <= s <= q:

    A_{sp} = wedge^s V            for 0 <= s <= r
    A_{sp} = (wedge^{q-s} V)^*    for r + 1 <= s <= q

with symmetric powers in place of exterior powers when p is even. Products
follow four rules (u in A_{sp}, v in A_{tp}, w a test element):

    1. s + t <= r:              u.v = u ^ v
    2. s, t <= r, s + t > r:    (u.v)(w) = F(u ^ v ^ w)
    3. s <= r < t:              (u.v)(w) = v(w ^ u)
    4. t <= r < s:              (u.v)(w) = u(v ^ w)

Bases are canonical index tuples; dual grades use the dual basis in the same
order. The top grade (wedge^0 V)^* is identified with Q through w -> w(1).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DegreeMismatchError,
    DimensionMismatchError,
    EvenQError,
    QTooSmallError,
    WrongKindForParityError,
)
from .exact_linalg import MatrixQ, RationalLike, rank, to_vector
from .multilinear import (
    FormKind,
    IndexTuple,
    MultilinearForm,
    canonical_tuples,
    multiply_basis,
)

logger = logging.getLogger(__name__)

# (left basis index, right basis index) -> {result basis index: coefficient}
CupTable = Mapping[Tuple[int, int], Mapping[int, Fraction]]


@dataclass(frozen=True)
class GradedAlgebra:
    """Structure constants of a graded algebra concentrated in degrees s*p.

    Attributes:
        n: Top degree (p * q)
        p: Grading step
        q: Arity of the generating form
        kind: Exterior (skew) or symmetric construction
        m: Dimension of V = A_p
        grades: Degree -> dimension, for degrees that are multiples of p
        bases: Degree -> index tuple labelling each basis vector
        dual_degrees: Degrees whose basis is a dual basis
        cup_tables: (s, t) -> structure constants of A_{sp} x A_{tp} -> A_{(s+t)p}
    """

    n: int
    p: int
    q: int
    kind: FormKind
    m: int
    grades: Mapping[int, int]
    bases: Mapping[int, Tuple[IndexTuple, ...]]
    dual_degrees: Tuple[int, ...]
    cup_tables: Mapping[Tuple[int, int], CupTable] = field(repr=False)

    @property
    def r(self) -> int:
        return (self.q - 1) // 2

    def grade_dim(self, degree: int) -> int:
        if degree < 0 or degree > self.n:
            return 0
        return self.grades.get(degree, 0)

    @property
    def structure_constant_count(self) -> int:
        return sum(
            len(row) for table in self.cup_tables.values() for row in table.values()
        )


@dataclass(frozen=True)
class AlgebraElement:
    """A homogeneous element: degree plus coordinates in that grade's basis."""

    degree: int
    coords: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", to_vector(self.coords))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.degree != other.degree or len(self.coords) != len(other.coords):
            raise DegreeMismatchError(
                f"Cannot add degree {self.degree} and degree {other.degree} elements"
            )
        return AlgebraElement(
            self.degree, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def scale(self, factor: RationalLike) -> "AlgebraElement":
        c = to_vector([factor])[0]
        return AlgebraElement(self.degree, tuple(c * a for a in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of an exhaustive check over basis tuples."""

    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None


@dataclass(frozen=True)
class PairingCheck:
    """Pairing A_i x A_{n-i} -> A_n for one degree i."""

    degree: int
    matrix: MatrixQ
    rank: int
    passed: bool


@dataclass(frozen=True)
class DualityReport:
    """Per-degree Poincare duality pairings."""

    top_dimension: int
    pairings: Tuple[PairingCheck, ...]

    @property
    def passed(self) -> bool:
        return self.top_dimension == 1 and all(c.passed for c in self.pairings)

    @property
    def failures(self) -> List[PairingCheck]:
        return [c for c in self.pairings if not c.passed]


def build_poincare_algebra(F: MultilinearForm, p: int) -> GradedAlgebra:
    """Build the graded algebra with Poincare duality attached to F and p.

    Args:
        F: Skew form when p is odd, symmetric form when p is even; q odd, q >= 3
        p: Grading step (positive)

    Raises:
        EvenQError: If F.q is even
        QTooSmallError: If F.q < 3
        WrongKindForParityError: If F's kind does not match the parity of p
    """
    if p < 1:
        raise DimensionMismatchError(f"Grading step must be positive, got {p}")
    if F.q % 2 == 0:
        raise EvenQError(f"Arity q={F.q} must be odd")
    if F.q < 3:
        raise QTooSmallError(f"Arity q={F.q} must be at least 3")
    expected = FormKind.SKEW if p % 2 else FormKind.SYMMETRIC
    if F.kind is not expected:
        raise WrongKindForParityError(
            f"p={p} needs a {expected.value} form, got {F.kind.value}"
        )

    q, kind, m = F.q, F.kind, F.m
    r = (q - 1) // 2

    labels: Dict[int, Tuple[IndexTuple, ...]] = {}
    for s in range(q + 1):
        size = s if s <= r else q - s
        labels[s] = tuple(canonical_tuples(kind, m, size))
    position = {s: {idx: k for k, idx in enumerate(labels[s])} for s in labels}

    tables: Dict[Tuple[int, int], Dict[Tuple[int, int], Dict[int, Fraction]]] = {}
    for s in range(q + 1):
        for t in range(q + 1 - s):
            table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}

            def put(i: int, j: int, k: int, value: Fraction) -> None:
                if value != 0:
                    table.setdefault((i, j), {})[k] = value

            if s + t <= r:
                # u ^ v
                for i, left in enumerate(labels[s]):
                    for j, right in enumerate(labels[t]):
                        idx, c = multiply_basis(kind, left, right)
                        if c != 0:
                            put(i, j, position[s + t][idx], c)
            elif s <= r and t <= r:
                # (u.v)(w) = F(u ^ v ^ w)
                for i, left in enumerate(labels[s]):
                    for j, right in enumerate(labels[t]):
                        for k, w in enumerate(labels[s + t]):
                            put(i, j, k, F.component(left + right + w))
            elif s <= r:
                # (u.v)(w) = v(w ^ u)
                for i, u in enumerate(labels[s]):
                    for k, w in enumerate(labels[s + t]):
                        idx, c = multiply_basis(kind, w, u)
                        if c != 0:
                            put(i, position[t][idx], k, c)
            else:
                # (u.v)(w) = u(v ^ w)
                for j, v in enumerate(labels[t]):
                    for k, w in enumerate(labels[s + t]):
                        idx, c = multiply_basis(kind, v, w)
                        if c != 0:
                            put(position[s][idx], j, k, c)
            tables[(s, t)] = table

    algebra = GradedAlgebra(
        n=p * q,
        p=p,
        q=q,
        kind=kind,
        m=m,
        grades={s * p: len(labels[s]) for s in labels},
        bases={s * p: labels[s] for s in labels},
        dual_degrees=tuple(s * p for s in range(r + 1, q + 1)),
        cup_tables=tables,
    )
    logger.debug(
        f"Built algebra n={algebra.n} p={p} q={q} m={m}: grades "
        f"{dict(algebra.grades)}, {algebra.structure_constant_count} constants"
    )
    return algebra


def _check_element(A: GradedAlgebra, x: AlgebraElement) -> None:
    if x.degree < 0 or x.degree > A.n:
        raise DegreeMismatchError(f"Degree {x.degree} outside 0..{A.n}")
    if len(x.coords) != A.grade_dim(x.degree):
        raise DegreeMismatchError(
            f"Degree {x.degree} has dimension {A.grade_dim(x.degree)}, "
            f"got {len(x.coords)} coordinates"
        )


def zero(A: GradedAlgebra, degree: int) -> AlgebraElement:
    return AlgebraElement(degree, (Fraction(0),) * A.grade_dim(degree))


def element(
    A: GradedAlgebra, degree: int, coords: Sequence[RationalLike]
) -> AlgebraElement:
    """Element of the given degree, validated against the algebra."""
    x = AlgebraElement(degree, tuple(to_vector(coords)))
    _check_element(A, x)
    return x


def basis_element(A: GradedAlgebra, degree: int, index: int) -> AlgebraElement:
    dim = A.grade_dim(degree)
    if not 0 <= index < dim:
        raise DegreeMismatchError(f"Degree {degree} has no basis vector {index}")
    coords = [Fraction(0)] * dim
    coords[index] = Fraction(1)
    return AlgebraElement(degree, tuple(coords))


def unit(A: GradedAlgebra) -> AlgebraElement:
    return basis_element(A, 0, 0)


def top_value(A: GradedAlgebra, x: AlgebraElement) -> Fraction:
    """Value of a top-degree element under the identification A_n = Q."""
    if x.degree != A.n or len(x.coords) != 1:
        raise DegreeMismatchError("Only top-degree elements of a 1-dimensional A_n")
    return x.coords[0]


def cup(a: AlgebraElement, b: AlgebraElement, A: GradedAlgebra) -> AlgebraElement:
    """Bilinear product A_i x A_j -> A_{i+j}; zero beyond the top degree.

    Raises:
        DegreeMismatchError: If either element is not in a valid grade of A
    """
    _check_element(A, a)
    _check_element(A, b)
    degree = a.degree + b.degree
    result = [Fraction(0)] * A.grade_dim(degree)
    if not result:
        return AlgebraElement(degree, ())
    table = A.cup_tables.get((a.degree // A.p, b.degree // A.p), {})
    for i, ai in enumerate(a.coords):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coords):
            if bj == 0:
                continue
            row = table.get((i, j))
            if row:
                for k, c in row.items():
                    result[k] += ai * bj * c
    return AlgebraElement(degree, tuple(result))


def _describe(A: GradedAlgebra, degree: int, index: int) -> str:
    labels = A.bases.get(degree, ())
    label = str(list(labels[index])) if index < len(labels) else f"#{index}"
    star = "*" if degree in A.dual_degrees else ""
    return f"e{label}{star} in A_{degree}"


def _basis(A: GradedAlgebra) -> List[Tuple[int, int, AlgebraElement]]:
    return [
        (degree, i, basis_element(A, degree, i))
        for degree in sorted(A.grades)
        for i in range(A.grade_dim(degree))
    ]


def verify_graded_commutativity(A: GradedAlgebra) -> VerificationResult:
    """Check a.b = (-1)^{deg a * deg b} b.a on all pairs of basis elements."""
    checked = 0
    basis = _basis(A)
    for da, i, a in basis:
        for db, j, b in basis:
            if da + db > A.n:
                continue
            checked += 1
            sign = -1 if (da * db) % 2 else 1
            if cup(a, b, A) != cup(b, a, A).scale(sign):
                where = f"{_describe(A, da, i)}, {_describe(A, db, j)}"
                logger.warning(f"Graded commutativity fails at {where}")
                return VerificationResult("graded_commutativity", False, checked, where)
    logger.info(f"Graded commutativity holds on {checked} basis pairs")
    return VerificationResult("graded_commutativity", True, checked)


def verify_associativity(A: GradedAlgebra) -> VerificationResult:
    """Check (a.b).c = a.(b.c) on all triples of basis elements."""
    checked = 0
    basis = _basis(A)
    for da, i, a in basis:
        for db, j, b in basis:
            if da + db > A.n:
                continue
            ab = cup(a, b, A)
            for dc, k, c in basis:
                if da + db + dc > A.n:
                    continue
                checked += 1
                if cup(ab, c, A) != cup(a, cup(b, c, A), A):
                    where = (
                        f"{_describe(A, da, i)}, {_describe(A, db, j)}, "
                        f"{_describe(A, dc, k)}"
                    )
                    logger.warning(f"Associativity fails at {where}")
                    return VerificationResult("associativity", False, checked, where)
    logger.info(f"Associativity holds on {checked} basis triples")
    return VerificationResult("associativity", True, checked)


def verify_unit(A: GradedAlgebra) -> VerificationResult:
    """Check 1.x = x = x.1 for every basis element x."""
    if A.grade_dim(0) != 1:
        return VerificationResult("unit", False, 0, "A_0 is not 1-dimensional")
    one = unit(A)
    checked = 0
    for degree, i, x in _basis(A):
        checked += 1
        if cup(one, x, A) != x or cup(x, one, A) != x:
            where = _describe(A, degree, i)
            logger.warning(f"Unit law fails at {where}")
            return VerificationResult("unit", False, checked, where)
    return VerificationResult("unit", True, checked)


def verify_poincare_duality(A: GradedAlgebra) -> DualityReport:
    """Build every pairing A_i x A_{n-i} -> A_n = Q and test nonsingularity."""
    top = A.grade_dim(A.n)
    pairings: List[PairingCheck] = []
    for i in range(A.n + 1):
        rows, cols = A.grade_dim(i), A.grade_dim(A.n - i)
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        if top == 1:
            for a_idx in range(rows):
                a = basis_element(A, i, a_idx)
                for b_idx in range(cols):
                    product = cup(a, basis_element(A, A.n - i, b_idx), A)
                    grid[a_idx][b_idx] = top_value(A, product)
        matrix = MatrixQ.from_rows(grid, cols=cols)
        matrix_rank = rank(matrix)
        passed = top == 1 and rows == cols and matrix_rank == rows
        pairings.append(PairingCheck(i, matrix, matrix_rank, passed))
    report = DualityReport(top, tuple(pairings))
    if report.passed:
        logger.info(f"Poincare duality holds in all {A.n + 1} degrees")
    else:
        logger.warning(
            f"Poincare duality fails in degrees {[c.degree for c in report.failures]}"
        )
    return report


def verify_top_product(A: GradedAlgebra, F: MultilinearForm) -> VerificationResult:
    """Check F(e_{i_1}, ..., e_{i_q}) = e_{i_1}. ... .e_{i_q} on canonical tuples.

    Raises:
        DimensionMismatchError: If A was not built from a form shaped like F
    """
    if (A.kind, A.m, A.q) != (F.kind, F.m, F.q):
        raise DimensionMismatchError("Algebra and form do not match")
    checked = 0
    for idx in canonical_tuples(F.kind, F.m, F.q):
        product = basis_element(A, A.p, idx[0] - 1)
        for i in idx[1:]:
            product = cup(product, basis_element(A, A.p, i - 1), A)
        checked += 1
        value = top_value(A, product) if A.grade_dim(A.n) == 1 else None
        if value != F.component(idx):
            where = f"tuple {list(idx)}: product {value}, component {F.component(idx)}"
            logger.warning(f"Product of generators differs from F at {where}")
            return VerificationResult("top_product", False, checked, where)
    return VerificationResult("top_product", True, checked)
