"""Graded algebra commands: build-algebra and verify-algebra."""

from typing import Optional

import click

from flatembed.cli.utils.reporting import (
    AppContext,
    Report,
    emit,
    handle_input_errors,
    json_option,
    out_option,
)
from flatembed.graded_algebra import (
    build_poincare_algebra,
    verify_associativity,
    verify_graded_commutativity,
    verify_poincare_duality,
    verify_top_product,
    verify_unit,
)
from flatembed.serialization import (
    algebra_from_document,
    algebra_to_document,
    form_from_document,
    matrix_to_document,
)


@click.command("build-algebra")
@click.argument("form_file", type=click.Path(dir_okay=False))
@click.option("--p", "p", type=int, required=True, help="Grading step")
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def build_algebra(
    app: AppContext, form_file: str, p: int, as_json: bool, out: Optional[str]
) -> None:
    """Build the graded algebra with Poincare duality attached to a form.

    \b
    Examples:
        flatembed build-algebra F.json --p 3 --out algebra.json
        flatembed verify-algebra algebra.json
    """
    F = form_from_document(app.read(form_file))
    algebra = build_poincare_algebra(F, p)
    document = algebra_to_document(algebra, F)
    report = Report(
        "build-algebra",
        inputs={"form": form_file, "p": p},
        results={
            "n": algebra.n,
            "grades": {str(d): algebra.grades[d] for d in sorted(algebra.grades)},
            "structure_constants": algebra.structure_constant_count,
        },
    )
    emit(report, app, as_json, out, document)


@click.command("verify-algebra")
@click.argument("algebra_file", type=click.Path(dir_okay=False))
@json_option
@click.pass_obj
@handle_input_errors
def verify_algebra(app: AppContext, algebra_file: str, as_json: bool) -> None:
    """Check commutativity, associativity, unit, duality and F = product."""
    algebra, F = algebra_from_document(app.read(algebra_file))
    report = Report("verify-algebra", inputs={"algebra": algebra_file})

    for check in (
        verify_graded_commutativity(algebra),
        verify_associativity(algebra),
        verify_unit(algebra),
    ):
        report.results[check.name] = {"checked": check.checked}
        report.add(
            check.name,
            check.passed,
            f"{check.checked} cases" if check.passed else str(check.counterexample),
        )

    duality = verify_poincare_duality(algebra)
    report.results["poincare_duality"] = {
        "top_dimension": duality.top_dimension,
        "pairings": [
            {
                "degree": c.degree,
                "rank": c.rank,
                "passed": c.passed,
                **matrix_to_document(c.matrix),
            }
            for c in duality.pairings
            if c.matrix.rows or c.matrix.cols
        ],
    }
    failed = [c.degree for c in duality.failures]
    report.add(
        "poincare_duality",
        duality.passed,
        "all pairings nonsingular" if duality.passed else f"fails in degrees {failed}",
    )

    condition = verify_top_product(algebra, F)
    report.results[condition.name] = {"checked": condition.checked}
    report.add(
        condition.name,
        condition.passed,
        (
            f"{condition.checked} tuples"
            if condition.passed
            else str(condition.counterexample)
        ),
    )
    emit(report, app, as_json)
