from pathlib import Path

import pytest

from mockalex import catalog
from mockalex.diagram import DiagramMap, parse
from mockalex.poly import LaurentPoly


FIXTURES = Path(__file__).parent / "fixtures"


def P(text: str) -> LaurentPoly:
    return LaurentPoly.from_text(text)


@pytest.fixture(scope="module")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="module")
def trefoil() -> DiagramMap:
    return parse(FIXTURES / "trefoil.json")


@pytest.fixture(scope="module")
def simple_knotoid() -> DiagramMap:
    return catalog.simple_knotoid()


@pytest.fixture(scope="module")
def labeled_knotoid() -> DiagramMap:
    return catalog.labeled_knotoid()


@pytest.fixture(scope="module")
def kink() -> DiagramMap:
    return catalog.kink()
