import pytest

from src.polysys.parser import parse_system
from tests.helpers import SYSTEMS_DIR, marking_spec_for


@pytest.fixture
def cubic_system():
    return parse_system((SYSTEMS_DIR / "cubic_ternary.txt").read_text())


@pytest.fixture
def quadratic_system():
    return parse_system("x0^2 - 4")


@pytest.fixture
def identity_system():
    return parse_system("x0 = 0")


@pytest.fixture
def cubic_spec(cubic_system):
    # tau = 2
    return marking_spec_for(cubic_system, 6, 3, 1)
