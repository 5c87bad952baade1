"""Unit tests for flatembed.

Unit tests are fast, isolated tests of single modules with no network or
external services. The exhaustive algebra sweeps are marked ``slow``.

Run unit tests:
    pytest tests/unit/
    pytest -m "not slow"
"""
