"""Witness checking and counting thresholds for the embedding obstruction.

A form F on Q^m is *special* when some subspace U with dim U >= m/3 carries
a linear map phi: U -> Q^m without non-zero fixed vectors such that
F(x_1, ..., x_q) = F(phi x_1, ..., phi x_q) for all x_i in U. Deciding
specialness is out of reach; this module checks supplied witnesses, builds
the block matrices used to produce them, and evaluates the dimension counts
that make generic forms non-special once m is large.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DegenerateBasisError,
    DimensionMismatchError,
    EvenQError,
    FlatEmbedError,
    InvalidBlockSpecError,
    MixedBlockTypesError,
    NotCompositeError,
    PowerOfTwoError,
    QTooSmallError,
)
from .exact_linalg import (
    MatrixQ,
    RationalLike,
    Vector,
    rank,
    to_rational,
    to_vector,
)
from .multilinear import FormKind, MultilinearForm, canonical_tuples, evaluate

logger = logging.getLogger(__name__)

CASE1_DIVISOR = 54
CASE2_DIVISOR = 18
DEFAULT_MAX_M = 10**15

VERDICT_CERTIFIED = "necessary condition satisfiable (witness found)"
VERDICT_NOT_CERTIFIED = "no supplied witness passes; embedding not certified either way"


@dataclass(frozen=True)
class SubspaceMap:
    """A subspace U of Q^m given by a basis, and a linear map phi: U -> Q^m.

    Args:
        ambient_dim: m
        u_basis: k vectors of length m spanning U
        phi: m x k matrix whose j-th column is phi(u_basis[j])
    """

    ambient_dim: int
    u_basis: Tuple[Vector, ...]
    phi: MatrixQ

    def __post_init__(self) -> None:
        basis = tuple(to_vector(v) for v in self.u_basis)
        object.__setattr__(self, "u_basis", basis)
        for v in basis:
            if len(v) != self.ambient_dim:
                raise DimensionMismatchError(
                    f"Basis vector of length {len(v)} in Q^{self.ambient_dim}"
                )
        if (self.phi.rows, self.phi.cols) != (self.ambient_dim, len(basis)):
            raise DimensionMismatchError(
                f"phi must be {self.ambient_dim}x{len(basis)}, "
                f"got {self.phi.rows}x{self.phi.cols}"
            )

    @property
    def dim(self) -> int:
        return len(self.u_basis)

    @property
    def u_matrix(self) -> MatrixQ:
        return MatrixQ.from_columns(self.u_basis, rows=self.ambient_dim)

    def image(self, index: int) -> Vector:
        return self.phi.column(index)

    def rebased(self, change: MatrixQ) -> "SubspaceMap":
        """Same U and phi expressed in the basis ``u_basis @ change``."""
        if (change.rows, change.cols) != (self.dim, self.dim):
            raise DimensionMismatchError(f"Basis change must be {self.dim}x{self.dim}")
        new_basis = (self.u_matrix @ change).columns()
        return SubspaceMap(self.ambient_dim, tuple(new_basis), self.phi @ change)

    @classmethod
    def negation(cls, m: int) -> "SubspaceMap":
        """U = Q^m with phi = -id."""
        identity = MatrixQ.identity(m)
        return cls(m, tuple(identity.columns()), -identity)


@dataclass(frozen=True)
class WitnessVerdict:
    """Result of checking one candidate (U, phi).

    ``failed_clause`` is one of "dimension", "fixed_point", "invariance", or
    None when the witness is valid.
    """

    valid: bool
    reason: str
    failed_clause: Optional[str] = None
    label: str = ""


def _require_independent(sm: SubspaceMap) -> None:
    if rank(sm.u_matrix) != sm.dim:
        raise DegenerateBasisError(f"The {sm.dim} basis vectors of U are dependent")


def is_fixed_point_free(sm: SubspaceMap) -> bool:
    """True iff phi(x) != x for every non-zero x in U.

    Raises:
        DegenerateBasisError: If the U basis is linearly dependent
    """
    _require_independent(sm)
    return rank(sm.phi - sm.u_matrix) == sm.dim


def _check_witness(
    F: MultilinearForm, sm: SubspaceMap, min_dim: int, label: str = ""
) -> WitnessVerdict:
    if sm.ambient_dim != F.m:
        raise DimensionMismatchError(
            f"Witness lives in Q^{sm.ambient_dim}, form on Q^{F.m}"
        )
    if sm.dim < min_dim:
        return WitnessVerdict(
            False, f"dim U = {sm.dim} < required {min_dim}", "dimension", label
        )
    if not is_fixed_point_free(sm):
        return WitnessVerdict(
            False, "phi fixes a non-zero vector of U", "fixed_point", label
        )
    for idx in canonical_tuples(F.kind, sm.dim, F.q):
        before = evaluate(F, [sm.u_basis[i - 1] for i in idx])
        after = evaluate(F, [sm.image(i - 1) for i in idx])
        if before != after:
            return WitnessVerdict(
                False,
                f"F changes on U basis tuple {list(idx)}: {before} vs {after}",
                "invariance",
                label,
            )
    return WitnessVerdict(True, "all clauses hold", None, label)


def verify_special_witness(F: MultilinearForm, sm: SubspaceMap) -> WitnessVerdict:
    """Check that (U, phi) shows F is special.

    The clauses are tested in order: 3 dim U >= m, phi fixed-point-free,
    and F invariant under phi on every canonical q-tuple of U basis vectors.

    Raises:
        DimensionMismatchError: If sm does not live in Q^{F.m}
        DegenerateBasisError: If the U basis is linearly dependent
    """
    return _check_witness(F, sm, math.ceil(Fraction(F.m, 3)))


# Block matrices


@dataclass(frozen=True)
class BlockSpec:
    """One block of a real Jordan form, sorted into six types.

    Types 1-4 are 1x1 blocks J_1(a) with a = 1, a = -1, |a| > 1 and |a| < 1.
    Type 5 is J_k(a) with k > 1. Type 6 is C_l(a, b) of size 2l with b != 0.
    ``size`` holds k (types 1-5) or l (type 6).
    """

    block_type: int
    size: int = 1
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        a, b = to_rational(self.a), to_rational(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        t = self.block_type
        if t not in range(1, 7):
            raise InvalidBlockSpecError(f"Block type must be 1..6, got {t}")
        if self.size < 1:
            raise InvalidBlockSpecError(f"Block size must be positive, got {self.size}")
        if t <= 4 and self.size != 1:
            raise InvalidBlockSpecError(f"Type {t} blocks are 1x1")
        if t == 1 and a != 1:
            raise InvalidBlockSpecError("Type 1 is J_1(1)")
        if t == 2 and a != -1:
            raise InvalidBlockSpecError("Type 2 is J_1(-1)")
        if t == 3 and abs(a) <= 1:
            raise InvalidBlockSpecError(f"Type 3 needs |a| > 1, got {a}")
        if t == 4 and abs(a) >= 1:
            raise InvalidBlockSpecError(f"Type 4 needs |a| < 1, got {a}")
        if t == 5 and self.size < 2:
            raise InvalidBlockSpecError("Type 5 needs k > 1")
        if t == 6 and b == 0:
            raise InvalidBlockSpecError("Type 6 needs b != 0")
        if t != 6 and b != 0:
            raise InvalidBlockSpecError(f"Only type 6 blocks take b, got type {t}")

    @classmethod
    def jordan(cls, k: int, a: RationalLike) -> "BlockSpec":
        """Sort J_k(a) into its type."""
        value = to_rational(a)
        if k > 1:
            return cls(5, k, value)
        if value == 1:
            return cls(1, 1, value)
        if value == -1:
            return cls(2, 1, value)
        return cls(3 if abs(value) > 1 else 4, 1, value)

    @classmethod
    def rotation(cls, l: int, a: RationalLike, b: RationalLike) -> "BlockSpec":
        return cls(6, l, to_rational(a), to_rational(b))

    @property
    def dimension(self) -> int:
        return 2 * self.size if self.block_type == 6 else self.size


def build_block(spec: BlockSpec) -> MatrixQ:
    """The matrix J_k(a) or C_l(a, b).

    J_k(a) has a on the diagonal and 1 on the superdiagonal. C_l(a, b) has
    2x2 blocks [[a, b], [-b, a]] on the diagonal and 2x2 identities directly
    above them.
    """
    n = spec.dimension
    grid = [[Fraction(0)] * n for _ in range(n)]
    if spec.block_type != 6:
        for i in range(n):
            grid[i][i] = spec.a
            if i + 1 < n:
                grid[i][i + 1] = Fraction(1)
    else:
        for i in range(0, n, 2):
            grid[i][i], grid[i][i + 1] = spec.a, spec.b
            grid[i + 1][i], grid[i + 1][i + 1] = -spec.b, spec.a
            if i + 2 < n:
                grid[i][i + 2] = Fraction(1)
                grid[i + 1][i + 3] = Fraction(1)
    return MatrixQ.from_rows(grid, cols=n)


@dataclass(frozen=True)
class BlockSubspaceResult:
    """A subspace V' of the block span with the flags that certify it.

    Attributes:
        block_type: Shared type of the blocks
        total_size: l, the dimension of the block span V
        subspace: V' with phi restricted to it
        full_map: The m x l matrix [J; extension] of phi on V
        dim_ok: 3 dim V' >= l
        injective: phi is injective on V'
        disjoint: phi(V') and V' meet only in 0
        hypothesis_fixed_point_free: phi has no non-zero fixed vector on V
    """

    block_type: int
    total_size: int
    subspace: SubspaceMap
    full_map: MatrixQ
    dim_ok: bool
    injective: bool
    disjoint: bool
    hypothesis_fixed_point_free: bool

    @property
    def passed(self) -> bool:
        return self.dim_ok and self.injective and self.disjoint


def block_subspace(
    blocks: Sequence[BlockSpec],
    ambient_dim: int,
    extension: Optional[MatrixQ] = None,
) -> BlockSubspaceResult:
    """Pick V' inside the span of same-type blocks and verify it.

    phi on V = span{e_1, ..., e_l} has matrix [J; extension] where J is the
    block-diagonal matrix of ``blocks`` and ``extension`` ((m - l) x l)
    defaults to zero. Type 1 keeps V' = V. Types 5 and 6 take the even
    positions inside every block. All flags are computed by rank tests.

    Raises:
        InvalidBlockSpecError: If the blocks are empty or of a type other than 1, 5, 6
        MixedBlockTypesError: If the blocks do not share one type
        DimensionMismatchError: If the blocks do not fit in Q^m
    """
    if not blocks:
        raise InvalidBlockSpecError("At least one block is required")
    types = {b.block_type for b in blocks}
    if len(types) > 1:
        raise MixedBlockTypesError(f"Blocks mix types {sorted(types)}")
    block_type = blocks[0].block_type
    if block_type not in (1, 5, 6):
        raise InvalidBlockSpecError(f"Type {block_type} blocks are not supported here")

    l = sum(b.dimension for b in blocks)
    if l > ambient_dim:
        raise DimensionMismatchError(f"Blocks of total size {l} exceed m={ambient_dim}")
    if extension is None:
        extension = MatrixQ.zeros(ambient_dim - l, l)
    if (extension.rows, extension.cols) != (ambient_dim - l, l):
        raise DimensionMismatchError(
            f"Extension must be {ambient_dim - l}x{l}, "
            f"got {extension.rows}x{extension.cols}"
        )

    jordan = MatrixQ.block_diagonal([build_block(b) for b in blocks])
    full_map = MatrixQ.from_rows(jordan.to_rows() + extension.to_rows(), cols=l)

    if block_type == 1:
        chosen = list(range(l))
    else:
        chosen = []
        offset = 0
        for b in blocks:
            chosen.extend(offset + j for j in range(1, b.dimension, 2))
            offset += b.dimension

    ambient = MatrixQ.identity(ambient_dim)
    subspace = SubspaceMap(
        ambient_dim,
        tuple(ambient.column(j) for j in chosen),
        MatrixQ.from_columns([full_map.column(j) for j in chosen], rows=ambient_dim),
    )
    k = subspace.dim
    image_rank = rank(subspace.phi)
    inclusion = MatrixQ.from_columns(
        [ambient.column(j) for j in range(l)], rows=ambient_dim
    )
    result = BlockSubspaceResult(
        block_type=block_type,
        total_size=l,
        subspace=subspace,
        full_map=full_map,
        dim_ok=3 * k >= l,
        injective=image_rank == k,
        disjoint=rank(subspace.u_matrix.hstack(subspace.phi)) == k + image_rank,
        hypothesis_fixed_point_free=rank(full_map - inclusion) == l,
    )
    logger.debug(
        f"block subspace: type {block_type}, l={l}, dim V'={k}, passed={result.passed}"
    )
    return result


# Counting thresholds


@dataclass(frozen=True)
class ThresholdReport:
    """Both sides of one counting inequality at a given m.

    ``sub_dim`` is m1 = floor(m/54) for case 1 and m2 = floor(m/18) for case 2.
    """

    kind: FormKind
    q: int
    case: int
    m: int
    sub_dim: int
    lhs: int
    rhs: int

    @property
    def satisfied(self) -> bool:
        return self.lhs < self.rhs

    @property
    def sub_dim_name(self) -> str:
        return "m1" if self.case == 1 else "m2"


def _check_q(q: int) -> None:
    if q % 2 == 0:
        raise EvenQError(f"Arity q={q} must be odd")
    if q < 3:
        raise QTooSmallError(f"Arity q={q} must be at least 3")


def _form_count(kind: FormKind, m: int, q: int) -> int:
    if kind is FormKind.SKEW:
        return math.comb(m, q)
    return math.comb(m + q - 1, q) if m > 0 else 0


def threshold_check(kind: FormKind, q: int, m: int, case: int) -> ThresholdReport:
    """Evaluate a counting inequality with exact integers.

    Case 1: m^2 + D(m) - D(m1) < D(m), Case 2: m^2 + m2 + (m - m2) m2 +
    D(m) - D(m2) < D(m), where D(k) is the dimension of the space of
    q-forms of the given kind on Q^k.

    Raises:
        EvenQError: If q is even
        QTooSmallError: If q < 3
    """
    _check_q(q)
    if m < 1:
        raise DimensionMismatchError(f"m must be positive, got {m}")
    if case not in (1, 2):
        raise FlatEmbedError(f"Case must be 1 or 2, got {case}")
    kind = FormKind(kind)
    total = _form_count(kind, m, q)
    if case == 1:
        sub = m // CASE1_DIVISOR
        lhs = m * m + total - _form_count(kind, sub, q)
    else:
        sub = m // CASE2_DIVISOR
        lhs = m * m + sub + (m - sub) * sub + total - _form_count(kind, sub, q)
    return ThresholdReport(kind, q, case, m, sub, lhs, total)


def _satisfied(kind: FormKind, q: int, m: int) -> bool:
    return (
        threshold_check(kind, q, m, 1).satisfied
        and threshold_check(kind, q, m, 2).satisfied
    )


def _block_holds(kind: FormKind, q: int, k: int) -> bool:
    # m1 and m2 are constant on each 18-step of the block and lhs - rhs
    # increases with m there, so the last m of every step decides it.
    if k < 1:
        return False
    base = CASE1_DIVISOR * k
    if not threshold_check(kind, q, base + CASE1_DIVISOR - 1, 1).satisfied:
        return False
    return all(
        threshold_check(kind, q, base + end, 2).satisfied for end in (17, 35, 53)
    )


def min_sufficient_m(kind: FormKind, q: int, max_m: int = DEFAULT_MAX_M) -> int:
    """Least m such that both inequalities hold at m and at every larger m.

    Whole blocks of 54 consecutive values are tested by their critical
    points; exponential bracketing and a binary search find the first good
    block, and the block before it is scanned for its last failure.

    Raises:
        EvenQError: If q is even
        QTooSmallError: If q < 3
        FlatEmbedError: If no threshold exists below ``max_m``
    """
    _check_q(q)
    kind = FormKind(kind)
    hi = 1
    while not _block_holds(kind, q, hi):
        hi *= 2
        if CASE1_DIVISOR * hi > max_m:
            raise FlatEmbedError(f"No threshold found below m={max_m}")
    lo = hi // 2
    logger.debug(f"min_sufficient_m: bracket blocks ({lo}, {hi}]")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _block_holds(kind, q, mid):
            hi = mid
        else:
            lo = mid
    start = CASE1_DIVISOR * (hi - 1)
    failing = [
        m
        for m in range(max(start, 1), start + CASE1_DIVISOR)
        if not _satisfied(kind, q, m)
    ]
    threshold = (failing[-1] if failing else start - 1) + 1
    logger.info(f"min_sufficient_m({kind.value}, q={q}) = {threshold}")
    return threshold


def required_witness_dim(beta_p: int, beta_p1_W: int) -> int:
    """ceil(max(0, beta_p - beta_p1_W) / 2)."""
    if beta_p < 0 or beta_p1_W < 0:
        raise DimensionMismatchError("Betti numbers must be non-negative")
    return -(-max(0, beta_p - beta_p1_W) // 2)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def factor_composite(n: int) -> Tuple[int, int]:
    """Split n = p * q with q the smallest odd prime factor of n.

    Raises:
        NotCompositeError: If n is prime or smaller than 4
        PowerOfTwoError: If n is a power of two
    """
    if n < 4 or _is_prime(n):
        raise NotCompositeError(f"{n} is not composite")
    if n & (n - 1) == 0:
        raise PowerOfTwoError(f"{n} is a power of two")
    odd = n
    while odd % 2 == 0:
        odd //= 2
    q = next((d for d in range(3, math.isqrt(odd) + 1, 2) if odd % d == 0), odd)
    return n // q, q


@dataclass(frozen=True)
class ObstructionReport:
    """Necessary-condition check for embedding a manifold with form F."""

    beta_p: int
    beta_p1_W: int
    required_min_dim: int
    witness_results: Tuple[WitnessVerdict, ...]

    @property
    def certified(self) -> bool:
        return any(v.valid for v in self.witness_results)

    @property
    def verdict(self) -> str:
        return VERDICT_CERTIFIED if self.certified else VERDICT_NOT_CERTIFIED


def obstruction_report(
    F: MultilinearForm,
    beta_p1_W: int,
    witnesses: Sequence[SubspaceMap],
    labels: Optional[Sequence[str]] = None,
) -> ObstructionReport:
    """Check candidate witnesses against the necessary embedding condition.

    A witness passes when dim U >= ceil((beta_p - beta_{p+1}(W)) / 2) with
    beta_p = F.m, phi is fixed-point-free, and F is invariant under phi.

    Raises:
        DimensionMismatchError: If a witness does not live in Q^{F.m}
    """
    required = required_witness_dim(F.m, beta_p1_W)
    names: List[str] = (
        list(labels) if labels else [f"#{i}" for i in range(len(witnesses))]
    )
    results = tuple(
        _check_witness(F, sm, required, name) for sm, name in zip(witnesses, names)
    )
    report = ObstructionReport(F.m, beta_p1_W, required, results)
    logger.info(
        f"obstruction: {sum(v.valid for v in results)}/{len(results)} witnesses pass"
    )
    return report


@dataclass(frozen=True)
class ConstructionPlan:
    """Parameters for building a manifold of dimension 2n that cannot embed.

    ``m`` is the dimension of V = H^p: at least 3 beta_{p+1}(W) and past the
    counting threshold. ``bound_ok`` confirms the required witness
    dimension is at least m/3.
    """

    n: int
    p: int
    q: int
    kind: FormKind
    beta_p1_W: int
    threshold: int
    m: int
    required_min_dim: int

    @property
    def bound_ok(self) -> bool:
        return 3 * self.required_min_dim >= self.m


def plan_construction(
    n: int, beta_p1_W: int, max_m: int = DEFAULT_MAX_M
) -> ConstructionPlan:
    """Factor n, choose the form kind from the parity of p, and pick m.

    Raises:
        NotCompositeError: If n is prime or smaller than 4
        PowerOfTwoError: If n is a power of two
    """
    p, q = factor_composite(n)
    kind = FormKind.SKEW if p % 2 else FormKind.SYMMETRIC
    threshold = min_sufficient_m(kind, q, max_m)
    m = max(3 * beta_p1_W, threshold)
    plan = ConstructionPlan(
        n=n,
        p=p,
        q=q,
        kind=kind,
        beta_p1_W=beta_p1_W,
        threshold=threshold,
        m=m,
        required_min_dim=required_witness_dim(m, beta_p1_W),
    )
    logger.info(f"plan: n={n} = {p}*{q}, {kind.value} forms on Q^{m}")
    return plan
