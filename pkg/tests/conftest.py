import random

import pytest

from quadcruise import QuadParams


@pytest.fixture
def params() -> QuadParams:
    """Default vehicle parameters used throughout the suite."""
    return QuadParams()


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
