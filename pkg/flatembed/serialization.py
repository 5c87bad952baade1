"""JSON document codecs for every value the toolkit reads or writes.

Rationals travel as strings ("3/4", "-2"); integers are also accepted on
input. Floats are refused everywhere. Decoders raise
``InvalidDocumentError`` with the offending field named.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import FlatEmbedError, InvalidDocumentError
from .exact_linalg import MatrixQ, format_rational, to_rational
from .graded_algebra import GradedAlgebra
from .intersection_form import (
    CanonicalDecomposition,
    IntegralSymmetricForm,
    ManifoldClass,
    Parity,
    Recipe,
)
from .multilinear import FormKind, MultilinearForm
from .obstruction import BlockSpec, SubspaceMap

logger = logging.getLogger(__name__)

Document = Dict[str, Any]


def _require(doc: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(doc, dict):
        raise InvalidDocumentError(f"{where}: expected a JSON object")
    if key not in doc:
        raise InvalidDocumentError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise InvalidDocumentError(f"{where}: field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise InvalidDocumentError(
            f"{where}: field {key!r} must be {kind.__name__}, "
            f"got {type(value).__name__}"
        )
    return value


def _decode(where: str, fn: Any, *args: Any, **kwargs: Any) -> Any:
    # Domain errors inside a document become document errors with context
    try:
        return fn(*args, **kwargs)
    except InvalidDocumentError:
        raise
    except (FlatEmbedError, TypeError) as e:
        raise InvalidDocumentError(f"{where}: {e}") from e


# Rationals and matrices


def rational_to_json(value: Fraction) -> str:
    return format_rational(value)


def rational_from_json(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, float):
        raise InvalidDocumentError(f"{where}: floats are not exact, got {value!r}")
    return _decode(where, to_rational, value)


def vector_from_json(values: Any, where: str) -> Tuple[Fraction, ...]:
    if not isinstance(values, list):
        raise InvalidDocumentError(f"{where}: expected a list of rationals")
    return tuple(rational_from_json(v, where) for v in values)


def rows_from_json(rows: Any, where: str, cols: int = -1) -> MatrixQ:
    if not isinstance(rows, list):
        raise InvalidDocumentError(f"{where}: expected a list of rows")
    grid = [vector_from_json(row, where) for row in rows]
    return _decode(where, MatrixQ.from_rows, grid, cols)


def matrix_to_document(matrix: MatrixQ) -> Document:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "matrix": [[rational_to_json(x) for x in row] for row in matrix.to_rows()],
    }


def matrix_from_document(doc: Any) -> MatrixQ:
    rows = _require(doc, "matrix", list, "matrix document")
    cols = doc.get("cols", -1)
    matrix = rows_from_json(rows, "matrix document", cols)
    if "rows" in doc and doc["rows"] != matrix.rows:
        raise InvalidDocumentError("matrix document: 'rows' disagrees with 'matrix'")
    return matrix


# Multilinear forms


def form_to_document(F: MultilinearForm) -> Document:
    return {
        "kind": F.kind.value,
        "m": F.m,
        "q": F.q,
        "components": [
            {"idx": list(idx), "value": rational_to_json(value)}
            for idx, value in F.components.items()
        ],
    }


def form_from_document(doc: Any) -> MultilinearForm:
    where = "form document"
    kind = _require(doc, "kind", str, where)
    if kind not in {k.value for k in FormKind}:
        raise InvalidDocumentError(f"{where}: kind must be 'skew' or 'symmetric'")
    m = _require(doc, "m", int, where)
    q = _require(doc, "q", int, where)
    components: Dict[Tuple[int, ...], Fraction] = {}
    for entry in _require(doc, "components", list, where):
        idx = _require(entry, "idx", list, where)
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise InvalidDocumentError(f"{where}: idx entries must be integers")
        key = tuple(idx)
        if key in components:
            raise InvalidDocumentError(f"{where}: duplicate component {list(key)}")
        components[key] = rational_from_json(entry.get("value"), f"{where} {idx}")
    return _decode(where, MultilinearForm, FormKind(kind), m, q, components)


def arguments_from_strings(args: Sequence[str]) -> List[Tuple[Fraction, ...]]:
    """Parse comma-separated fraction lists such as "1,0,-1/2"."""
    vectors = []
    for text in args:
        parts = text.split(",")
        if any(not p.strip() for p in parts):
            raise InvalidDocumentError(f"argument {text!r}: empty entry")
        vectors.append(tuple(rational_from_json(p, "argument") for p in parts))
    return vectors


# Witnesses and blocks


def witness_to_document(sm: SubspaceMap) -> Document:
    return {
        "m": sm.ambient_dim,
        "U_basis": [[rational_to_json(x) for x in v] for v in sm.u_basis],
        "phi": [[rational_to_json(x) for x in row] for row in sm.phi.to_rows()],
    }


def witness_from_document(doc: Any) -> SubspaceMap:
    where = "witness document"
    m = _require(doc, "m", int, where)
    basis_rows = _require(doc, "U_basis", list, where)
    basis = tuple(vector_from_json(v, where) for v in basis_rows)
    phi = rows_from_json(_require(doc, "phi", list, where), where, len(basis))
    return _decode(where, SubspaceMap, m, basis, phi)


def block_to_document(spec: BlockSpec) -> Document:
    doc: Document = {"type": spec.block_type}
    doc["l" if spec.block_type == 6 else "k"] = spec.size
    doc["a"] = rational_to_json(spec.a)
    if spec.block_type == 6:
        doc["b"] = rational_to_json(spec.b)
    return doc


def block_from_document(doc: Any) -> BlockSpec:
    where = "block document"
    block_type = _require(doc, "type", int, where)
    size_key = "l" if block_type == 6 else "k"
    size = _require(doc, size_key, int, where) if size_key in doc else 1
    default_a = {1: 1, 2: -1}.get(block_type, 0)
    a = rational_from_json(doc.get("a", default_a), f"{where} a")
    b = rational_from_json(doc.get("b", 0), f"{where} b")
    return _decode(where, BlockSpec, block_type, size, a, b)


def block_subspace_input_from_document(
    doc: Any, ambient_dim: Optional[int] = None
) -> Tuple[List[BlockSpec], int, Optional[MatrixQ]]:
    """Blocks, m and optional extension rows from {"blocks", "m", "extension"}."""
    where = "block subspace document"
    blocks = [block_from_document(b) for b in _require(doc, "blocks", list, where)]
    m = ambient_dim if ambient_dim is not None else _require(doc, "m", int, where)
    extension = None
    if doc.get("extension") is not None:
        size = sum(b.dimension for b in blocks)
        extension = rows_from_json(doc["extension"], f"{where} extension", size)
    return blocks, m, extension


# Graded algebras


def algebra_to_document(A: GradedAlgebra, F: MultilinearForm) -> Document:
    """Self-contained dump: grades, bases, structure constants and the form."""
    constants = []
    for (s, t), table in sorted(A.cup_tables.items()):
        for (i, j), row in sorted(table.items()):
            for k, value in sorted(row.items()):
                constants.append(
                    {
                        "s": s,
                        "t": t,
                        "i": i,
                        "j": j,
                        "k": k,
                        "value": rational_to_json(value),
                    }
                )
    return {
        "n": A.n,
        "p": A.p,
        "q": A.q,
        "kind": A.kind.value,
        "m": A.m,
        "grades": [
            {
                "degree": degree,
                "dimension": A.grades[degree],
                "dual": degree in A.dual_degrees,
                "basis": [list(label) for label in A.bases.get(degree, ())],
            }
            for degree in sorted(A.grades)
        ],
        "structure_constants": constants,
        "form": form_to_document(F),
    }


def _label_from_json(label: Any, where: str) -> Tuple[int, ...]:
    if not isinstance(label, list) or any(
        isinstance(i, bool) or not isinstance(i, int) for i in label
    ):
        raise InvalidDocumentError(
            f"{where}: basis labels must be lists of integers, got {label!r}"
        )
    return tuple(label)


def algebra_from_document(doc: Any) -> Tuple[GradedAlgebra, MultilinearForm]:
    where = "algebra document"
    p = _require(doc, "p", int, where)
    q = _require(doc, "q", int, where)
    n = _require(doc, "n", int, where)
    m = _require(doc, "m", int, where)
    kind = _require(doc, "kind", str, where)
    if kind not in {k.value for k in FormKind}:
        raise InvalidDocumentError(f"{where}: kind must be 'skew' or 'symmetric'")
    if p < 1 or q < 1 or n != p * q:
        raise InvalidDocumentError(f"{where}: n must equal p * q")

    grades: Dict[int, int] = {}
    bases: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
    dual: List[int] = []
    for entry in _require(doc, "grades", list, where):
        degree = _require(entry, "degree", int, where)
        if degree % p or not 0 <= degree <= n:
            raise InvalidDocumentError(f"{where}: bad degree {degree}")
        dimension = _require(entry, "dimension", int, where)
        if dimension < 0:
            raise InvalidDocumentError(
                f"{where}: negative dimension in degree {degree}"
            )
        grades[degree] = dimension
        labels = entry.get("basis", [])
        if not isinstance(labels, list):
            raise InvalidDocumentError(
                f"{where}: basis of degree {degree} must be a list"
            )
        bases[degree] = tuple(_label_from_json(label, where) for label in labels)
        if entry.get("dual", False):
            dual.append(degree)

    tables: Dict[Tuple[int, int], Dict[Tuple[int, int], Dict[int, Fraction]]] = {
        (s, t): {} for s in range(q + 1) for t in range(q + 1 - s)
    }
    for entry in _require(doc, "structure_constants", list, where):
        s, t, i, j, k = (_require(entry, key, int, where) for key in "stijk")
        if (s, t) not in tables:
            raise InvalidDocumentError(f"{where}: no product A_{s * p} x A_{t * p}")
        bounds = (
            (i, grades.get(s * p, 0)),
            (j, grades.get(t * p, 0)),
            (k, grades.get((s + t) * p, 0)),
        )
        if any(not 0 <= index < dim for index, dim in bounds):
            raise InvalidDocumentError(f"{where}: constant index out of range")
        value = rational_from_json(entry.get("value"), where)
        if value != 0:
            tables[(s, t)].setdefault((i, j), {})[k] = value

    F = form_from_document(_require(doc, "form", dict, where))
    algebra = GradedAlgebra(
        n=n,
        p=p,
        q=q,
        kind=FormKind(kind),
        m=m,
        grades=grades,
        bases=bases,
        dual_degrees=tuple(sorted(dual)),
        cup_tables=tables,
    )
    return algebra, F


# Intersection forms and recipes


def integral_form_to_document(Q: IntegralSymmetricForm) -> Document:
    return {"matrix": [list(row) for row in Q.matrix]}


def integral_form_from_document(doc: Any) -> IntegralSymmetricForm:
    where = "intersection form document"
    rows = _require(doc, "matrix", list, where)
    for row in rows:
        if not isinstance(row, list):
            raise InvalidDocumentError(f"{where}: rows must be lists of integers")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidDocumentError(f"{where}: entry {x!r} is not an integer")
    return _decode(where, IntegralSymmetricForm, tuple(tuple(row) for row in rows))


def decomposition_to_document(dec: CanonicalDecomposition) -> Document:
    doc: Document = {"parity": dec.parity.value}
    if dec.parity is Parity.ODD:
        doc.update(plus_count=dec.plus_count, minus_count=dec.minus_count)
    else:
        doc.update(e8_count=dec.e8_count, h_count=dec.h_count)
    doc["describe"] = dec.describe()
    return doc


def decomposition_from_document(doc: Any) -> CanonicalDecomposition:
    where = "decomposition document"
    parity = _require(doc, "parity", str, where)
    if parity not in {p.value for p in Parity}:
        raise InvalidDocumentError(f"{where}: parity must be 'even' or 'odd'")
    counts: Mapping[str, int] = {
        key: _require(doc, key, int, where)
        for key in ("plus_count", "minus_count", "e8_count", "h_count")
        if key in doc
    }
    return _decode(where, CanonicalDecomposition, Parity(parity), **counts)


def recipe_to_document(recipe: Recipe) -> Document:
    return {
        "decomposition": decomposition_to_document(recipe.manifold.form),
        "ks": recipe.manifold.ks,
        "summands": [
            {"piece": name, "count": count} for name, count in recipe.summands
        ],
    }


def recipe_from_document(doc: Any) -> Recipe:
    where = "recipe document"
    dec = decomposition_from_document(_require(doc, "decomposition", dict, where))
    ks = doc.get("ks")
    if ks is not None and (isinstance(ks, bool) or ks not in (0, 1)):
        raise InvalidDocumentError(f"{where}: ks must be 0, 1 or null")
    summands = tuple(
        (_require(s, "piece", str, where), _require(s, "count", int, where))
        for s in _require(doc, "summands", list, where)
    )
    return Recipe(ManifoldClass(dec, ks), summands)
