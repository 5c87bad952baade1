"""Obstruction commands: witnesses, blocks, thresholds, factoring and plans."""

from typing import Any, Dict, Optional, Tuple

import click

from flatembed.cli.utils.reporting import (
    AppContext,
    Report,
    emit,
    handle_input_errors,
    json_option,
    out_option,
)
from flatembed.multilinear import FormKind
from flatembed.obstruction import (
    ThresholdReport,
    WitnessVerdict,
    block_subspace,
    build_block,
    factor_composite,
    min_sufficient_m,
    obstruction_report,
    plan_construction,
    threshold_check,
    verify_special_witness,
)
from flatembed.serialization import (
    block_from_document,
    block_subspace_input_from_document,
    form_from_document,
    matrix_to_document,
    witness_from_document,
    witness_to_document,
)

KIND_CHOICE = click.Choice([k.value for k in FormKind], case_sensitive=False)


def _verdict_document(verdict: WitnessVerdict) -> Dict[str, Any]:
    return {
        "label": verdict.label,
        "valid": verdict.valid,
        "failed_clause": verdict.failed_clause,
        "reason": verdict.reason,
    }


def _threshold_document(report: ThresholdReport) -> Dict[str, Any]:
    return {
        "case": report.case,
        report.sub_dim_name: report.sub_dim,
        "lhs": str(report.lhs),
        "rhs": str(report.rhs),
        "satisfied": report.satisfied,
    }


@click.command("check-witness")
@click.argument("form_file", type=click.Path(dir_okay=False))
@click.argument("witness_file", type=click.Path(dir_okay=False))
@json_option
@click.pass_obj
@handle_input_errors
def check_witness(
    app: AppContext, form_file: str, witness_file: str, as_json: bool
) -> None:
    """Check that a witness (U, phi) shows the form is special."""
    F = form_from_document(app.read(form_file))
    sm = witness_from_document(app.read(witness_file))
    verdict = verify_special_witness(F, sm)
    report = Report(
        "check-witness",
        inputs={"form": form_file, "witness": witness_file},
        results={"dim_U": sm.dim, "m": sm.ambient_dim, **_verdict_document(verdict)},
    )
    report.add("special_witness", verdict.valid, verdict.reason)
    emit(report, app, as_json)


@click.command("build-block")
@click.argument("block_file", type=click.Path(dir_okay=False))
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def build_block_cmd(
    app: AppContext, block_file: str, as_json: bool, out: Optional[str]
) -> None:
    """Build the matrix J_k(a) or C_l(a, b) of a block document."""
    spec = block_from_document(app.read(block_file))
    document = matrix_to_document(build_block(spec))
    report = Report(
        "build-block",
        inputs={"block": block_file},
        results={"type": spec.block_type, **document},
    )
    emit(report, app, as_json, out, document)


@click.command("block-subspace")
@click.argument("blocks_file", type=click.Path(dir_okay=False))
@click.option("--m", "m", type=int, default=None, help="Ambient dimension")
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def block_subspace_cmd(
    app: AppContext,
    blocks_file: str,
    m: Optional[int],
    as_json: bool,
    out: Optional[str],
) -> None:
    """Pick V' in the span of same-type blocks and verify its flags.

    The input holds {"blocks": [...], "extension": [[...]]}; the extension
    rows are optional and default to zero.
    """
    blocks, ambient_dim, extension = block_subspace_input_from_document(
        app.read(blocks_file), m
    )
    result = block_subspace(blocks, ambient_dim, extension)
    witness = witness_to_document(result.subspace)
    report = Report(
        click.get_current_context().info_name or "block-subspace",
        inputs={"blocks": blocks_file, "m": ambient_dim},
        results={
            "block_type": result.block_type,
            "total_size": result.total_size,
            "dim_V_prime": result.subspace.dim,
            "hypothesis_fixed_point_free": result.hypothesis_fixed_point_free,
            "subspace": witness,
        },
    )
    report.add(
        "dimension",
        result.dim_ok,
        f"3 * {result.subspace.dim} >= {result.total_size}",
    )
    report.add("injective", result.injective, "phi is injective on V'")
    report.add("disjoint", result.disjoint, "phi(V') meets V' only in 0")
    emit(report, app, as_json, out, witness)


@click.command("threshold")
@click.option("--kind", type=KIND_CHOICE, required=True, help="skew or symmetric")
@click.option("--q", "q", type=int, required=True, help="Odd arity q >= 3")
@click.option("--m", "m", type=int, default=None, help="Dimension to test")
@click.option("--case", "case", type=click.Choice(["1", "2"]), default=None)
@click.option("--find-min", is_flag=True, help="Find the least m past which both hold")
@json_option
@click.pass_obj
@handle_input_errors
def threshold(
    app: AppContext,
    kind: str,
    q: int,
    m: Optional[int],
    case: Optional[str],
    find_min: bool,
    as_json: bool,
) -> None:
    """Evaluate the counting inequalities, or find where they start to hold.

    \b
    Examples:
        flatembed threshold --kind skew --q 3 --m 1000 --case 1
        flatembed threshold --kind skew --q 3 --find-min
    """
    form_kind = FormKind(kind)
    report = Report("threshold", inputs={"kind": kind, "q": q})
    if find_min:
        max_m = int(app.config.get("threshold.max_m"))
        found = min_sufficient_m(form_kind, q, max_m)
        report.results["min_sufficient_m"] = found
        report.results["at_min"] = [
            _threshold_document(threshold_check(form_kind, q, found, c)) for c in (1, 2)
        ]
        if found > 1:
            report.results["below_min"] = [
                _threshold_document(threshold_check(form_kind, q, found - 1, c))
                for c in (1, 2)
            ]
    else:
        if m is None or case is None:
            raise click.UsageError("Give --m and --case, or --find-min")
        report.inputs.update(m=m, case=int(case))
        result = threshold_check(form_kind, q, m, int(case))
        report.results.update(_threshold_document(result))
        report.results["verdict"] = "satisfied" if result.satisfied else "not satisfied"
    emit(report, app, as_json)


@click.command("factor")
@click.argument("n", type=int)
@json_option
@click.pass_obj
@handle_input_errors
def factor(app: AppContext, n: int, as_json: bool) -> None:
    """Split n = p * q with q the smallest odd prime factor."""
    p, q = factor_composite(n)
    report = Report("factor", inputs={"n": n}, results={"p": p, "q": q})
    emit(report, app, as_json)


@click.command("plan")
@click.argument("n", type=int)
@click.option("--beta-w", "beta_w", type=int, default=0, help="beta_{p+1}(W)")
@json_option
@click.pass_obj
@handle_input_errors
def plan(app: AppContext, n: int, beta_w: int, as_json: bool) -> None:
    """Choose p, q, the form kind and m for a non-embeddable 2n-manifold."""
    result = plan_construction(n, beta_w, int(app.config.get("threshold.max_m")))
    report = Report(
        "plan",
        inputs={"n": n, "beta_w": beta_w},
        results={
            "p": result.p,
            "q": result.q,
            "kind": result.kind.value,
            "threshold": result.threshold,
            "m": result.m,
            "required_min_dim": result.required_min_dim,
        },
    )
    report.add(
        "dimension_bound",
        result.bound_ok,
        f"3 * {result.required_min_dim} >= {result.m}",
    )
    emit(report, app, as_json)


@click.command("obstruct")
@click.argument("form_file", type=click.Path(dir_okay=False))
@click.argument("witness_files", nargs=-1, type=click.Path(dir_okay=False))
@click.option("--beta-w", "beta_w", type=int, default=0, help="beta_{p+1}(W)")
@json_option
@out_option
@click.pass_obj
@handle_input_errors
def obstruct(
    app: AppContext,
    form_file: str,
    witness_files: Tuple[str, ...],
    beta_w: int,
    as_json: bool,
    out: Optional[str],
) -> None:
    """Check witnesses against the necessary condition for embedding."""
    F = form_from_document(app.read(form_file))
    witnesses = [witness_from_document(app.read(path)) for path in witness_files]
    result = obstruction_report(F, beta_w, witnesses, labels=list(witness_files))
    report = Report(
        "obstruct",
        inputs={"form": form_file, "witnesses": list(witness_files), "beta_w": beta_w},
        results={
            "beta_p": result.beta_p,
            "beta_p1_W": result.beta_p1_W,
            "required_min_dim": result.required_min_dim,
            "witness_results": [_verdict_document(v) for v in result.witness_results],
            "verdict": result.verdict,
        },
    )
    report.add("witness_found", result.certified, result.verdict)
    emit(report, app, as_json, out)
