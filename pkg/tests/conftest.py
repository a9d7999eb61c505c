"""
Shared fixtures.
"""

import numpy as np
import pytest

from csplume.synth.scenarios import SMALL


@pytest.fixture
def rng():
    """Seeded generator so randomized tests are repeatable."""
    return np.random.default_rng(20240601)


@pytest.fixture
def small_scenario():
    """16x16 pixels, 16 bands, 40 frames: big enough for every stage, small enough for unit tests."""
    return SMALL
