"""Pytest configuration and shared fixtures."""

import json
import random
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import pytest
from click.testing import CliRunner

from flatembed.intersection_form import IntegralSymmetricForm
from flatembed.multilinear import FormKind, MultilinearForm, canonical_tuples


def random_form(
    rng: random.Random, kind: FormKind, m: int, q: int, density: float = 1.0
) -> MultilinearForm:
    """Form with small random rational components on a random subset of tuples."""
    components = {}
    for idx in canonical_tuples(kind, m, q):
        if rng.random() <= density:
            components[idx] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return MultilinearForm(kind, m, q, components)


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so random sweeps are reproducible."""
    return random.Random(20240601)


@pytest.fixture
def skew3() -> MultilinearForm:
    """The skew 3-form e1* ^ e2* ^ e3* on Q^3."""
    return MultilinearForm(FormKind.SKEW, 3, 3, {(1, 2, 3): Fraction(1)})


@pytest.fixture
def hyperbolic() -> IntegralSymmetricForm:
    return IntegralSymmetricForm.hyperbolic()


@pytest.fixture
def runner(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> CliRunner:
    """CLI runner in an empty working directory with no configuration set."""
    monkeypatch.delenv("FLATEMBED_CONFIG", raising=False)
    monkeypatch.delenv("FLATEMBED_LOG_LEVEL", raising=False)
    monkeypatch.chdir(tmp_path)
    return CliRunner()


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], str]:
    """Write a JSON document under tmp_path and return its absolute path."""

    def _write(name: str, document: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return _write
