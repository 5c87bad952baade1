"""Test suite for flatembed."""
