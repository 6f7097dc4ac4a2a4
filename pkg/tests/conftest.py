import math

import numpy as np
import pytest
from hypothesis import settings

from folia.document import carriere, heisenberg, hrw7
from folia.lie_frame import validate_algebra
from folia.random_algebras import random_foliated_algebra
from folia.transverse import compute_geometry

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

LOG_RHO = math.acosh(1.5)
K = math.acosh(1.5)

ACCEPTANCE_LINES = []


def load(doc):
    alg = validate_algebra(doc.to_algebra())
    fol = doc.to_foliation()
    return alg, fol


def sample(seed, family=None):
    alg, fol = random_foliated_algebra(np.random.default_rng(seed), family)
    return validate_algebra(alg), fol


@pytest.fixture
def carriere_pair():
    return load(carriere(3))


@pytest.fixture
def hrw7_pair():
    return load(hrw7(1.5, 1.0, 1.0))


@pytest.fixture
def heisenberg_pair():
    return load(heisenberg())


@pytest.fixture
def carriere_geom(carriere_pair):
    return compute_geometry(*carriere_pair)


@pytest.fixture
def hrw7_geom(hrw7_pair):
    return compute_geometry(*hrw7_pair)


@pytest.fixture
def heisenberg_geom(heisenberg_pair):
    return compute_geometry(*heisenberg_pair)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
