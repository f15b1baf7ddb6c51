import os

import pytest

from slopechar import specfile

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def load(name):
    return specfile.load_spec(os.path.join(FIXTURES, name + ".slope"))


@pytest.fixture(scope="session")
def typical_spec():
    return load("typical")


@pytest.fixture(scope="session")
def ab_spec():
    return load("ammann_beenker")


@pytest.fixture(scope="session")
def penrose_spec():
    return load("penrose")


@pytest.fixture(scope="session")
def typical(typical_spec):
    return specfile.to_slope(typical_spec)


@pytest.fixture(scope="session")
def ab(ab_spec):
    return specfile.to_slope(ab_spec)


@pytest.fixture(scope="session")
def penrose(penrose_spec):
    return specfile.to_slope(penrose_spec)
