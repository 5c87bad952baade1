"""Command-line interface for flatembed."""
