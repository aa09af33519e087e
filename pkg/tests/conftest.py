import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest

from heptacyclic import matrix_from_json


def fixture_path(name: str) -> Path:
    return Path(resources.files("heptacyclic")) / "fixtures" / name


@pytest.fixture(scope="session")
def example10():
    """The bundled 10x10 worked example."""
    return matrix_from_json(fixture_path("example10.json").read_text())


@pytest.fixture(scope="session")
def example10_rhs():
    return [Fraction(v) for v in json.loads(fixture_path("example10_rhs.json").read_text())]


@pytest.fixture(scope="session")
def example10_inverse():
    payload = json.loads(fixture_path("example10_inverse.json").read_text())
    return [[Fraction(v) for v in row] for row in payload["S"]]
