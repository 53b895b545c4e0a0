import random

import pytest
from hypothesis import HealthCheck, settings

from cubicsheaves.samples import DEFAULT_SEED, fixtures

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def fix():
    return fixtures()


@pytest.fixture
def rng():
    return random.Random(DEFAULT_SEED)
