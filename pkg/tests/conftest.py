import random

import pytest
from hypothesis import HealthCheck, settings

# the exhaustive sweeps dwarf hypothesis runtime; don't let its deadline
# heuristics flake on a loaded CI box
settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@pytest.fixture
def rng():
    return random.Random(0xA11CE)
