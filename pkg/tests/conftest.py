import random

import pytest
from hypothesis import settings

from borelinv.gf import field_new

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def F2():
    return field_new(2)


@pytest.fixture
def F3():
    return field_new(3)


@pytest.fixture
def F4():
    return field_new(2, 2)


@pytest.fixture
def rng():
    return random.Random(0)
