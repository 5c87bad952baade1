"""Tests for the flatembed command line."""
