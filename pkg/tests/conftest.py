import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cubekit.cubulation import random_cubulation
from cubekit.fixtures import FIXTURES, example1, example2, load_fixture

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def ex2():
    return example2()


@pytest.fixture
def seed():
    return load_fixture("seed")


@pytest.fixture(params=FIXTURES)
def fixture_cubulation(request):
    return load_fixture(request.param)


@st.composite
def cubulations(draw, max_n=3, orientable=None):
    n = draw(st.integers(1, max_n))
    o = draw(st.booleans()) if orientable is None else orientable
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_cubulation(rng, n, orientable=o)
