"""flatembed - exact computations around embeddings of 2n-manifolds in R^{4n-1}.

The library modules are usable on their own:

- ``exact_linalg``: rational matrices, rank, kernel, determinant, congruence
- ``multilinear``: skew and symmetric q-forms, evaluation, pullback
- ``graded_algebra``: graded algebras with Poincare duality built from a form
- ``obstruction``: special-form witnesses, block matrices, counting thresholds
- ``intersection_form``: unimodular forms, KS arithmetic, connected-sum recipes
"""

from flatembed.errors import FlatEmbedError
from flatembed.exact_linalg import MatrixQ
from flatembed.graded_algebra import (
    AlgebraElement,
    GradedAlgebra,
    build_poincare_algebra,
    cup,
)
from flatembed.intersection_form import (
    IntegralSymmetricForm,
    classify_indefinite,
    invariants,
)
from flatembed.multilinear import FormKind, MultilinearForm, evaluate, pullback
from flatembed.obstruction import (
    BlockSpec,
    SubspaceMap,
    min_sufficient_m,
    obstruction_report,
    verify_special_witness,
)

__version__ = "0.1.0"

__all__ = [
    "FlatEmbedError",
    "MatrixQ",
    "FormKind",
    "MultilinearForm",
    "evaluate",
    "pullback",
    "GradedAlgebra",
    "AlgebraElement",
    "build_poincare_algebra",
    "cup",
    "SubspaceMap",
    "BlockSpec",
    "verify_special_witness",
    "min_sufficient_m",
    "obstruction_report",
    "IntegralSymmetricForm",
    "invariants",
    "classify_indefinite",
]
