"""Report rendering for CLI commands.

Every command builds a ``Report`` and hands it to ``emit``: ``--json`` prints
the machine document on stdout, otherwise a rich table is shown.
"""

import json
import sys
from dataclasses import dataclass, field
from functools import wraps
from typing import Any, Callable, Dict, List, Optional

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from flatembed.config import ToolkitConfig
from flatembed.errors import DocumentNotFoundError, FlatEmbedError
from flatembed.storage import JSONStorage, StorageBackend

console = Console()


class InputError(click.ClickException):
    """Bad input files, arguments or configuration (exit code 2)."""

    exit_code = 2


def handle_input_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn library and file errors raised by a command into exit code 2."""

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (FlatEmbedError, OSError, json.JSONDecodeError) as e:
            raise InputError(str(e)) from e

    return wrapper


@dataclass
class AppContext:
    """Shared state handed to every command through ``ctx.obj``."""

    config: ToolkitConfig
    storage: StorageBackend
    reader: StorageBackend = field(default_factory=JSONStorage)

    @property
    def indent(self) -> int:
        return int(self.config.get("report.indent", 2))

    def read(self, path: str) -> Any:
        if not self.reader.exists(path):
            raise DocumentNotFoundError(f"No such document: {path}")
        return self.reader.load(path)

    def write(self, path: str, document: Any) -> None:
        if not self.storage.save(path, document):
            raise InputError(f"Could not write {path}")


@dataclass
class Verdict:
    name: str
    passed: bool
    message: str


@dataclass
class Report:
    """Machine-readable outcome of one command."""

    subcommand: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    verdicts: List[Verdict] = field(default_factory=list)

    def add(self, name: str, passed: bool, message: str) -> None:
        self.verdicts.append(Verdict(name, passed, message))

    @property
    def failed(self) -> bool:
        return any(not v.passed for v in self.verdicts)

    def to_document(self) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "results": self.results,
            "verdicts": [
                {"name": v.name, "passed": v.passed, "message": v.message}
                for v in self.verdicts
            ],
        }


def _render(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    if value is None:
        return "-"
    return str(value)


def print_report(report: Report) -> None:
    """Print a report to the console as tables."""
    console.print(f"\n[bold cyan]{escape(report.subcommand)}[/bold cyan]")

    if report.inputs:
        table = Table(show_header=True, header_style="bold cyan")
        table.add_column("Input", style="cyan")
        table.add_column("Value", style="white")
        for key, value in report.inputs.items():
            table.add_row(escape(key), escape(_render(value)))
        console.print(table)

    if report.results:
        table = Table(show_header=True, header_style="bold cyan")
        table.add_column("Result", style="cyan")
        table.add_column("Value", style="white", overflow="fold")
        for key, value in report.results.items():
            table.add_row(escape(key), escape(_render(value)))
        console.print(table)

    for verdict in report.verdicts:
        name, message = escape(verdict.name), escape(verdict.message)
        if verdict.passed:
            console.print(f"[green]✓ {name}[/green]: {message}")
        else:
            console.print(f"[red]✗ {name}[/red]: {message}")


def emit(
    report: Report,
    app: AppContext,
    as_json: bool,
    out: Optional[str] = None,
    artifact: Optional[Any] = None,
) -> None:
    """Show the report and write ``artifact`` (or the report) to ``out``.

    Exits with status 1 when any verdict failed.
    """
    document = report.to_document()
    if out:
        app.write(out, artifact if artifact is not None else document)
    if as_json:
        click.echo(json.dumps(document, indent=app.indent, ensure_ascii=False))
    else:
        print_report(report)
        if out:
            console.print(f"[green]✓ Written to {escape(out)}[/green]")
    if report.failed:
        sys.exit(1)


def json_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--json", "as_json", is_flag=True, help="Print the machine report on stdout"
    )(func)


def out_option(func: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--out",
        type=click.Path(dir_okay=False),
        default=None,
        help="Write the produced document to this path",
    )(func)
