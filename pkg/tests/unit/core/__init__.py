"""Tests for the flatembed library modules."""
