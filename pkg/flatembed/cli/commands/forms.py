"""Multilinear form commands: dims, eval-form, pullback."""

from typing import Tuple

import click

from flatembed.cli.utils.reporting import (
    AppContext,
    Report,
    emit,
    handle_input_errors,
    json_option,
    out_option,
)
from flatembed.multilinear import (
    FormKind,
    dim_space,
    evaluate,
    evaluate_bruteforce,
    pullback,
)
from flatembed.serialization import (
    arguments_from_strings,
    form_from_document,
    form_to_document,
    matrix_from_document,
    rational_to_json,
)

KIND_CHOICE = click.Choice([k.value for k in FormKind], case_sensitive=False)


@click.command()
@click.option("--kind", type=KIND_CHOICE, required=True, help="skew or symmetric")
@click.option("--m", "m", type=int, required=True, help="Dimension of the space")
@click.option("--q", "q", type=int, required=True, help="Arity of the forms")
@json_option
@click.pass_obj
@handle_input_errors
def dims(app: AppContext, kind: str, m: int, q: int, as_json: bool) -> None:
    """Dimension of the space of skew or symmetric q-forms on Q^m."""
    report = Report("dims", inputs={"kind": kind, "m": m, "q": q})
    report.results["dimension"] = dim_space(FormKind(kind), m, q)
    emit(report, app, as_json)


@click.command("eval-form")
@click.argument("form_file", type=click.Path(dir_okay=False))
@click.option(
    "--arg",
    "args",
    multiple=True,
    required=True,
    help="Argument vector as comma-separated fractions (repeat q times)",
)
@click.option(
    "--bruteforce", is_flag=True, help="Cross-check against full multilinear expansion"
)
@json_option
@click.pass_obj
@handle_input_errors
def eval_form(
    app: AppContext,
    form_file: str,
    args: Tuple[str, ...],
    bruteforce: bool,
    as_json: bool,
) -> None:
    """Evaluate a form on q vectors.

    \b
    Examples:
        flatembed eval-form F.json --arg 1,0,0 --arg 0,1,0 --arg 0,0,1
    """
    F = form_from_document(app.read(form_file))
    vectors = arguments_from_strings(args)
    report = Report(
        "eval-form",
        inputs={"form": form_file, "args": [[str(x) for x in v] for v in vectors]},
    )
    value = evaluate(F, vectors)
    report.results["value"] = rational_to_json(value)
    if bruteforce:
        oracle = evaluate_bruteforce(F, vectors)
        report.results["bruteforce"] = rational_to_json(oracle)
        report.add(
            "oracle_agrees",
            oracle == value,
            "matches full expansion"
            if oracle == value
            else "differs from full expansion",
        )
    emit(report, app, as_json)


@click.command("pullback")
@click.argument("form_file", type=click.Path(dir_okay=False))
@click.option(
    "--tau",
    "tau_file",
    type=click.Path(dir_okay=False),
    required=True,
    help="Matrix document of the linear map",
)
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def pullback_cmd(
    app: AppContext, form_file: str, tau_file: str, as_json: bool, out: str
) -> None:
    """Pull a form back along a linear map tau: Q^m -> Q^m."""
    F = form_from_document(app.read(form_file))
    tau = matrix_from_document(app.read(tau_file))
    result = pullback(tau, F)
    document = form_to_document(result)
    report = Report(
        "pullback",
        inputs={"form": form_file, "tau": tau_file},
        results={"form": document, "stored_components": result.stored_count},
    )
    emit(report, app, as_json, out, document)
