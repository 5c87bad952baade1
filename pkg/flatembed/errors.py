"""Exception hierarchy for flatembed.

Every error derives from ``FlatEmbedError``, which itself is a ``ValueError``
so that callers treating bad input generically keep working.
"""


class FlatEmbedError(ValueError):
    """Base class for all flatembed errors."""


# Linear algebra
class NonSquareError(FlatEmbedError):
    """A square matrix was required."""


class NotSymmetricError(FlatEmbedError):
    """A symmetric matrix was required."""


class SingularMatrixError(FlatEmbedError):
    """The matrix has no inverse."""


class InvalidRationalError(FlatEmbedError):
    """A value could not be read as an exact rational."""


# Multilinear forms
class IndexOutOfRangeError(FlatEmbedError):
    """An index lies outside 1..m."""


class NonCanonicalIndexError(FlatEmbedError):
    """A stored component is keyed by a non-canonical index tuple."""


class ArityMismatchError(FlatEmbedError):
    """Wrong number of arguments for a q-multilinear form."""


class DimensionMismatchError(FlatEmbedError):
    """Vector, matrix or form dimensions disagree."""


# Graded algebra
class EvenQError(FlatEmbedError):
    """The arity q must be odd."""


class QTooSmallError(FlatEmbedError):
    """The arity q must be at least 3."""


class WrongKindForParityError(FlatEmbedError):
    """Skew forms go with odd p, symmetric forms with even p."""


class DegreeMismatchError(FlatEmbedError):
    """An element does not live in a valid grade of the algebra."""


# Obstruction
class DegenerateBasisError(FlatEmbedError):
    """The supplied subspace basis is linearly dependent."""


class InvalidBlockSpecError(FlatEmbedError):
    """A block specification violates its type constraints."""


class MixedBlockTypesError(FlatEmbedError):
    """All blocks handed to the subspace construction must share one type."""


class NotCompositeError(FlatEmbedError):
    """The integer is not composite."""


class PowerOfTwoError(FlatEmbedError):
    """Powers of two have no odd factor q >= 3."""


# Intersection forms
class NotUnimodularError(FlatEmbedError):
    """The form has determinant other than +1 or -1."""


class NotIndefiniteError(FlatEmbedError):
    """The form is definite (or degenerate); the classification does not apply."""


class InconsistentInvariantsError(FlatEmbedError):
    """Invariants that no even unimodular indefinite form can have."""


class InvalidDecompositionError(FlatEmbedError):
    """Summand counts that describe no form."""


class KsNotApplicableError(FlatEmbedError):
    """A KS value was given where the form already determines the manifold."""


class EmptyDecompositionError(FlatEmbedError):
    """A rank-zero decomposition has no connected-sum recipe."""


class OddRankError(FlatEmbedError):
    """Doubles always have even rank."""


# Documents
class InvalidDocumentError(FlatEmbedError):
    """A JSON document does not match its schema."""


class DocumentNotFoundError(FlatEmbedError):
    """No document is stored under the requested key."""
