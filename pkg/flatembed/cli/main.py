"""Main CLI entry point for flatembed."""

import logging
import sys
from typing import Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from flatembed.cli.commands import algebra, forms, intersection, obstruct
from flatembed.cli.utils.reporting import AppContext, InputError
from flatembed.config import LOG_LEVELS, ToolkitConfig
from flatembed.errors import FlatEmbedError
from flatembed.storage import create_storage


def setup_logging(level: str) -> None:
    """Send log records to stderr through rich, keeping stdout for reports."""
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@click.group()
@click.version_option(package_name="flatembed")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="YAML configuration file",
)
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default=None,
    help="Logging level (default from config or FLATEMBED_LOG_LEVEL)",
)
@click.pass_context
def cli(
    ctx: click.Context, config_path: Optional[str], log_level: Optional[str]
) -> None:
    """flatembed - exact tools for embedding obstructions of 2n-manifolds.

    Build and verify multilinear forms, special-form witnesses, graded
    algebras with Poincare duality, and intersection form recipes.
    """
    try:
        config = ToolkitConfig.discover(config_path)
    except FlatEmbedError as e:
        raise InputError(str(e)) from e
    if not config.validate():
        raise InputError("Invalid configuration: " + "; ".join(config.problems()))
    setup_logging(config.log_level(log_level))
    ctx.obj = AppContext(
        config=config,
        storage=create_storage(
            "json",
            base_dir=config.get("storage.base_dir"),
            indent=config.get("report.indent"),
        ),
    )


# Register commands
cli.add_command(forms.dims)
cli.add_command(forms.eval_form)
cli.add_command(forms.pullback_cmd)
cli.add_command(obstruct.check_witness)
cli.add_command(obstruct.build_block_cmd)
cli.add_command(obstruct.block_subspace_cmd)
cli.add_command(obstruct.block_subspace_cmd, name="lemma32")
cli.add_command(obstruct.threshold)
cli.add_command(obstruct.factor)
cli.add_command(obstruct.plan)
cli.add_command(obstruct.obstruct)
cli.add_command(algebra.build_algebra)
cli.add_command(algebra.verify_algebra)
cli.add_command(intersection.classify_form)
cli.add_command(intersection.form_sum)
cli.add_command(intersection.form_negate)
cli.add_command(intersection.ks_sum_cmd)
cli.add_command(intersection.recipe)
cli.add_command(intersection.double)


def main() -> None:
    """Entry point for the CLI."""
    try:
        cli()
    except KeyboardInterrupt:
        click.echo("\nInterrupted", err=True)
        sys.exit(130)


if __name__ == "__main__":
    main()
