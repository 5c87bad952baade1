"""Utility modules for CLI commands."""

from flatembed.cli.utils import reporting

__all__ = ["reporting"]
