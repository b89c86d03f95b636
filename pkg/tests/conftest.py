"""Shared fixtures for the dglift test suite."""
import random
from pathlib import Path
import pytest
from src.graded.field import Field
from tests.factories import inst1, inst1_problem

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture
def q():
    """The rationals."""
    return Field("q")


@pytest.fixture
def f2():
    """The field with two elements."""
    return Field("f2")


@pytest.fixture
def rng():
    """Seeded random source for property tests."""
    return random.Random(20240611)


@pytest.fixture
def inst1_data():
    """inst1 categories and functors over Q."""
    return inst1()


@pytest.fixture
def inst1_lift_problem():
    """inst1 lifting problem with identity classes."""
    return inst1_problem()


@pytest.fixture
def problems_dir():
    """Directory of the bundled problem files."""
    return PROBLEMS_DIR
