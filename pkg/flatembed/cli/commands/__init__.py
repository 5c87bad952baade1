"""CLI commands for flatembed."""

from flatembed.cli.commands import algebra, forms, intersection, obstruct

__all__ = ["forms", "obstruct", "algebra", "intersection"]
