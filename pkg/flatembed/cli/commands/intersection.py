"""Intersection form commands: classification, sums, KS and recipes."""

from typing import Optional, Tuple

import click

from flatembed.cli.utils.reporting import (
    AppContext,
    Report,
    emit,
    handle_input_errors,
    json_option,
    out_option,
)
from flatembed.errors import NotIndefiniteError, NotUnimodularError
from flatembed.intersection_form import (
    FormInvariants,
    Parity,
    classify_indefinite,
    direct_sum,
    double_class,
    invariants,
    ks_fold,
    negate,
    realize_recipe,
)
from flatembed.serialization import (
    decomposition_to_document,
    integral_form_from_document,
    integral_form_to_document,
    recipe_to_document,
)


def _invariants_document(inv: FormInvariants) -> dict:
    return {
        "rank": inv.rank,
        "b_plus": inv.b_plus,
        "b_minus": inv.b_minus,
        "signature": inv.signature,
        "parity": inv.parity.value,
        "determinant": inv.determinant,
        "unimodular": inv.unimodular,
        "indefinite": inv.indefinite,
    }


@click.command("classify-form")
@click.argument("form_file", type=click.Path(dir_okay=False))
@json_option
@click.pass_obj
@handle_input_errors
def classify_form(app: AppContext, form_file: str, as_json: bool) -> None:
    """Report invariants and, for indefinite unimodular forms, the normal form.

    Definite or non-unimodular forms get their invariants only and exit 1.
    """
    Q = integral_form_from_document(app.read(form_file))
    inv = invariants(Q)
    report = Report("classify-form", inputs={"form": form_file})
    report.results["invariants"] = _invariants_document(inv)
    try:
        decomposition = classify_indefinite(Q)
    except (NotUnimodularError, NotIndefiniteError) as e:
        report.results["decomposition"] = None
        report.add("classified", False, str(e))
    else:
        report.results["decomposition"] = decomposition_to_document(decomposition)
        report.add("classified", True, decomposition.describe())
    emit(report, app, as_json)


@click.command("form-sum")
@click.argument("first", type=click.Path(dir_okay=False))
@click.argument("second", type=click.Path(dir_okay=False))
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def form_sum(
    app: AppContext, first: str, second: str, as_json: bool, out: Optional[str]
) -> None:
    """Direct sum of two forms (the form of a connected sum)."""
    Q = direct_sum(
        integral_form_from_document(app.read(first)),
        integral_form_from_document(app.read(second)),
    )
    document = integral_form_to_document(Q)
    report = Report(
        "form-sum",
        inputs={"first": first, "second": second},
        results={**document, "invariants": _invariants_document(invariants(Q))},
    )
    emit(report, app, as_json, out, document)


@click.command("form-negate")
@click.argument("form_file", type=click.Path(dir_okay=False))
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def form_negate(
    app: AppContext, form_file: str, as_json: bool, out: Optional[str]
) -> None:
    """Negate a form (reverse the orientation)."""
    Q = negate(integral_form_from_document(app.read(form_file)))
    document = integral_form_to_document(Q)
    report = Report(
        "form-negate",
        inputs={"form": form_file},
        results={**document, "invariants": _invariants_document(invariants(Q))},
    )
    emit(report, app, as_json, out, document)


@click.command("ks-sum")
@click.argument("values", nargs=-1, type=click.IntRange(0, 1), required=True)
@json_option
@click.pass_obj
@handle_input_errors
def ks_sum_cmd(app: AppContext, values: Tuple[int, ...], as_json: bool) -> None:
    """Kirby-Siebenmann invariant of a connected sum."""
    report = Report(
        "ks-sum", inputs={"values": list(values)}, results={"ks": ks_fold(values)}
    )
    emit(report, app, as_json)


@click.command("recipe")
@click.argument("form_file", type=click.Path(dir_okay=False))
@click.option("--ks", type=click.IntRange(0, 1), default=None, help="KS (odd forms)")
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def recipe(
    app: AppContext,
    form_file: str,
    ks: Optional[int],
    as_json: bool,
    out: Optional[str],
) -> None:
    """Connected sum of standard pieces realizing a form and KS value."""
    Q = integral_form_from_document(app.read(form_file))
    result = realize_recipe(classify_indefinite(Q), ks)
    document = recipe_to_document(result)
    report = Report(
        "recipe",
        inputs={"form": form_file, "ks": ks},
        results={
            **document,
            "describe": result.describe(),
            "recipe_ks": result.ks,
            "note": result.manifold.note,
        },
    )
    report.add(
        "form_matches",
        invariants(result.form()) == invariants(Q),
        "summed pieces reproduce rank, signature and parity",
    )
    emit(report, app, as_json, out, document)


@click.command("double")
@click.option(
    "--parity",
    type=click.Choice([p.value for p in Parity], case_sensitive=False),
    required=True,
)
@click.option("--rank", type=int, required=True, help="Rank of the form of DM")
@json_option
@click.pass_obj
@handle_input_errors
def double(app: AppContext, parity: str, rank: int, as_json: bool) -> None:
    """Homeomorphism type of a double DM, and where it embeds."""
    label = double_class(Parity(parity), rank)
    report = Report(
        "double",
        inputs={"parity": parity, "rank": rank},
        results={"label": label.label, "embeds_in": label.embeds_in},
    )
    emit(report, app, as_json)
